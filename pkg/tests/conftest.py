"""
Shared fixtures for the Toral Mix test suite.

The ``app`` fixture is picked up by pytest-flask; command tests drive the
flask CLI through ``app.test_cli_runner()``.
"""
import json

import pytest

from toralmix import create_app
from toralmix.engine.families import S, T
from toralmix.models.episet import EpiSet


@pytest.fixture
def app():
    """Application built with the testing configuration."""
    app = create_app('config.TestingConfig')
    yield app


@pytest.fixture
def cli(app):
    return app.test_cli_runner()


@pytest.fixture
def st_family():
    return EpiSet.of([S, T])


@pytest.fixture
def payload():
    """Build a JSON payload with decimal-string matrix entries."""
    def build(matrices, **fields):
        document = {
            'dim': len(matrices[0]),
            'matrices': [[[str(x) for x in row] for row in m] for m in matrices],
        }
        document.update(fields)
        return json.dumps(document)
    return build
