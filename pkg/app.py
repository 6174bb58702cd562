"""
Toral Mix - command-line entry point

This file serves as the main entry point for the application. Its purposes are:
1. To import the application factory function (create_app) from the toralmix package
2. To expose a Flask CLI group whose subcommands are the engine operations
3. To run that CLI when executed directly (not when imported)

Usage:
    flask --app app mixing-set --input payload.json
    python app.py ergodic < payload.json

The application factory pattern keeps configuration in one place and lets
tests build an instance with the testing configuration.
"""
from flask.cli import FlaskGroup

from toralmix import create_app

# Create the application instance using the factory function
app = create_app()

cli = FlaskGroup(create_app=lambda: app, help='Mixing and ergodicity of toral epimorphisms.')

# This conditional ensures the CLI only runs when this script is executed directly
if __name__ == '__main__':
    cli()
