from flask import Flask
from mttp.config import get_config
from mttp.commands.cli import cli_bp
import logging

def create_app(config_name=None):
    """
    Create and configure the solver application.

    The application carries the configuration and the command-line
    commands (solve, validate, bench, oracle); it serves no HTTP routes.

    Args:
        config_name (str, optional): The configuration to use. Defaults to None (uses MTTP_ENV).

    Returns:
        Flask application instance
    """
    app = Flask(__name__)

    # Configure the application
    app.config.from_object(get_config(config_name))

    # Set up logging; stderr only, stdout carries command output
    logging.basicConfig(
        level=app.config.get('LOG_LEVEL', 'INFO'),
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
    )

    # Register commands
    app.register_blueprint(cli_bp)

    return app
