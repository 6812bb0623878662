import os
from dotenv import load_dotenv

load_dotenv()

class Config:
    """Base configuration."""
    LOG_LEVEL = os.environ.get('LOG_LEVEL', 'INFO')

    # Default seed for solve/bench; command-line flags win
    MTTP_SEED = int(os.environ.get('MTTP_SEED', 0))

    # Genetic algorithm defaults
    MTTP_POPULATION = int(os.environ.get('MTTP_POPULATION', 4))
    MTTP_ELITE = int(os.environ.get('MTTP_ELITE', 2))
    MTTP_MUTATION_PROB = float(os.environ.get('MTTP_MUTATION_PROB', 0.8))
    MTTP_MAX_ITERATIONS = int(os.environ.get('MTTP_MAX_ITERATIONS', 5000))

    # Schedule search
    MTTP_NODE_BUDGET = int(os.environ.get('MTTP_NODE_BUDGET', 10 ** 6))


class DevelopmentConfig(Config):
    """Development configuration."""
    DEBUG = True
    LOG_LEVEL = os.environ.get('LOG_LEVEL', 'DEBUG')


class ProductionConfig(Config):
    """Production configuration."""
    DEBUG = False


class TestingConfig(Config):
    """Testing configuration."""
    TESTING = True
    LOG_LEVEL = os.environ.get('LOG_LEVEL', 'WARNING')
    MTTP_MAX_ITERATIONS = int(os.environ.get('TEST_MAX_ITERATIONS', 200))


config = {
    'development': DevelopmentConfig,
    'production': ProductionConfig,
    'testing': TestingConfig,
    'default': ProductionConfig
}

def get_config(config_name=None):
    """Return the appropriate configuration object based on the environment."""
    config_name = config_name or os.environ.get('MTTP_ENV', 'default')
    return config.get(config_name, config['default'])
