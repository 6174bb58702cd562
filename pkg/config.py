"""
Configuration Module for Toral Mix

This module defines configuration classes for the development, testing and
production environments. Environment-specific classes inherit from a common
base class, following Flask's configuration conventions.

Key features:
- Environment variable loading via python-dotenv
- Hierarchical configuration classes
- Dynamic configuration selection through the TORALMIX_CONFIG environment variable
- Defaults for every engine and oracle knob (exponent override, oracle
  bounds, Monte Carlo sample counts, worker counts, report options)

Any key below can be overridden by an environment variable of the same name,
or by an entry in appsettings.json, which the application factory applies
after loading the class.
"""
import os
import logging

from dotenv import load_dotenv

load_dotenv()

logger = logging.getLogger(__name__)


def _int_env(name, default):
    """Read an integer environment variable, falling back to ``default``."""
    value = os.environ.get(name)
    if value is None or value == '':
        return default
    try:
        return int(value)
    except ValueError:
        logger.warning(f"Ignoring non-integer {name}={value!r}")
        return default


def _bool_env(name, default):
    value = os.environ.get(name)
    if value is None:
        return default
    return value.lower() in ('true', 'yes', '1')


class Config:
    """
    Base configuration class containing settings common to all environments.
    """
    # Flask app module for CLI commands
    FLASK_APP = 'app.py'

    # Adds every exponent 1..MAX_EXPONENT to the searched set when set
    MAX_EXPONENT = _int_env('MAX_EXPONENT', None)

    DEFAULT_SEED = _int_env('DEFAULT_SEED', 0)

    # Oracle search bounds: tuple height H, horizon N and hit threshold R
    DEFAULT_HEIGHT = _int_env('DEFAULT_HEIGHT', 2)
    DEFAULT_HORIZON = _int_env('DEFAULT_HORIZON', 24)
    DEFAULT_MIN_HITS = _int_env('DEFAULT_MIN_HITS', 2)

    DEFAULT_WORD_LEN = _int_env('DEFAULT_WORD_LEN', 4)
    ORBIT_CAP = _int_env('ORBIT_CAP', 10000)

    MC_SAMPLES = _int_env('MC_SAMPLES', 100000)
    MC_WORKERS = _int_env('MC_WORKERS', 1)
    MIXING_WORKERS = _int_env('MIXING_WORKERS', 1)

    LOG_LEVEL = os.environ.get('LOG_LEVEL', 'INFO')

    # Wall-clock timing makes reports differ between runs, so it is opt-in
    REPORT_TIMING = _bool_env('REPORT_TIMING', False)


class DevelopmentConfig(Config):
    """
    Development environment configuration: debug flag on and verbose engine logs.
    """
    FLASK_ENV = 'development'
    DEBUG = True
    LOG_LEVEL = os.environ.get('LOG_LEVEL', 'DEBUG')


class TestingConfig(Config):
    """
    Testing environment configuration.

    Keeps Monte Carlo runs small and pins the seed so tests are reproducible
    regardless of the developer's environment.
    """
    TESTING = True
    DEFAULT_SEED = 0
    MC_SAMPLES = 20000
    MC_WORKERS = 1
    MIXING_WORKERS = 1
    MAX_EXPONENT = None
    REPORT_TIMING = False
    LOG_LEVEL = 'WARNING'


class ProductionConfig(Config):
    """
    Production configuration for batch runs.
    """
    FLASK_ENV = 'production'
    DEBUG = False
    MIXING_WORKERS = _int_env('MIXING_WORKERS', os.cpu_count() or 1)


# Map config environment names to config classes for easy selection
config_by_name = {
    'development': DevelopmentConfig,
    'testing': TestingConfig,
    'production': ProductionConfig,
    'default': DevelopmentConfig
}

active_config_name = os.environ.get('TORALMIX_CONFIG', 'default')
if active_config_name not in config_by_name:
    logger.warning(f"Unknown TORALMIX_CONFIG {active_config_name!r}; using default")
    active_config_name = 'default'
active_config_class = config_by_name[active_config_name]

active_config = active_config_class()
