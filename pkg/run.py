from flask.cli import FlaskGroup
from mttp import create_app

cli = FlaskGroup(create_app=create_app, add_default_commands=False)

if __name__ == '__main__':
    # Commands: solve, validate, bench, oracle
    cli()
