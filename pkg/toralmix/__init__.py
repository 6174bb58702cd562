"""
Application Factory Module for Toral Mix

This module implements the Application Factory pattern for Flask. The
application is used through its command-line interface: every engine
operation is a ``flask`` subcommand contributed by a blueprint, and the
application object carries the configuration those commands read their
defaults from.

The factory:
1. Creates the Flask app instance
2. Loads configuration from an object, then applies overrides from appsettings.json
3. Configures logging at the configured level
4. Registers the command blueprints
5. Sets up the Flask shell context with the engine entry points
"""
import os
import json
import logging

from flask import Flask

logger = logging.getLogger(__name__)

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'

# Keys appsettings.json may override; anything else in the file is ignored
SETTINGS_KEYS = (
    'MAX_EXPONENT', 'DEFAULT_SEED', 'DEFAULT_HEIGHT', 'DEFAULT_HORIZON', 'DEFAULT_MIN_HITS',
    'DEFAULT_WORD_LEN', 'ORBIT_CAP', 'MC_SAMPLES', 'MC_WORKERS', 'MIXING_WORKERS', 'LOG_LEVEL',
    'REPORT_TIMING',
)


def load_appsettings(path):
    """
    Read engine overrides from a JSON settings file.

    Args:
        path (str): Location of appsettings.json

    Returns:
        dict: The recognised keys found in the file; empty when the file is
            missing or unreadable
    """
    if not os.path.exists(path):
        return {}
    try:
        with open(path, 'r') as f:
            settings = json.load(f)
    except (OSError, ValueError) as e:
        logger.warning(f"Error loading appsettings.json: {e}")
        return {}
    if not isinstance(settings, dict):
        logger.warning("appsettings.json does not hold an object; ignoring it")
        return {}
    ignored = sorted(set(settings) - set(SETTINGS_KEYS))
    if ignored:
        logger.warning(f"Ignoring unknown appsettings keys: {', '.join(ignored)}")
    return {k: v for k, v in settings.items() if k in SETTINGS_KEYS}


def create_app(config_object='config.active_config', appsettings_path=None):
    """
    Application factory function that creates and configures a Flask application instance.

    Args:
        config_object (str): Import path to a configuration object to load.
                            Defaults to 'config.active_config', which is chosen
                            by the TORALMIX_CONFIG environment variable.
        appsettings_path (str): JSON overrides applied after the config object;
                            defaults to appsettings.json at the repository root.
                            Ignored under the testing configuration unless given.

    Returns:
        Flask: A configured Flask application instance
    """
    app = Flask(__name__)
    app.config.from_object(config_object)

    if appsettings_path is None and not app.config.get('TESTING'):
        appsettings_path = os.path.join(os.path.dirname(os.path.dirname(__file__)), 'appsettings.json')
    if appsettings_path:
        overrides = load_appsettings(appsettings_path)
        for key, value in overrides.items():
            # Environment variables still win over the settings file
            if key not in os.environ:
                app.config[key] = value
        if overrides:
            logger.info(f"Loaded {len(overrides)} settings from {os.path.basename(appsettings_path)}")

    level = str(app.config.get('LOG_LEVEL', 'INFO')).upper()
    logging.basicConfig(level=getattr(logging, level, logging.INFO), format=LOG_FORMAT)
    logging.getLogger('toralmix').setLevel(getattr(logging, level, logging.INFO))

    # Register blueprints; each contributes top-level commands to the flask CLI
    from toralmix.commands.decide import decide_bp
    from toralmix.commands.scan import scan_bp
    from toralmix.commands.oracle import oracle_bp

    app.register_blueprint(decide_bp)
    app.register_blueprint(scan_bp)
    app.register_blueprint(oracle_bp)

    @app.shell_context_processor
    def shell_context():
        """Adds the main engine entry points to the Flask shell."""
        from toralmix.engine import families, limits, mixing, oracle
        from toralmix.models.episet import EpiSet

        return {'app': app, 'EpiSet': EpiSet, 'mixing': mixing, 'limits': limits,
                'oracle': oracle, 'families': families}

    return app
