"""
Check appsettings.json

Loads appsettings.json the way the application factory does and reports
which keys would override the active configuration, which keys are ignored,
and which values are out of range for the engine.
"""
import sys
import json
import logging
from pathlib import Path

# Add parent directory to path for imports
sys.path.append(str(Path(__file__).parent.parent))

from toralmix import LOG_FORMAT, SETTINGS_KEYS, load_appsettings
from config import active_config

logging.basicConfig(level=logging.INFO, format=LOG_FORMAT)
logger = logging.getLogger(__name__)

# Keys that must hold a positive integer when set
POSITIVE_KEYS = ('DEFAULT_HEIGHT', 'DEFAULT_HORIZON', 'DEFAULT_MIN_HITS', 'ORBIT_CAP', 'MC_SAMPLES',
                 'MC_WORKERS', 'MIXING_WORKERS')


def check(settings):
    """Return a list of problems with the recognised settings."""
    problems = []
    for key in POSITIVE_KEYS:
        value = settings.get(key)
        if value is not None and (isinstance(value, bool) or not isinstance(value, int) or value < 1):
            problems.append(f"{key} must be a positive integer, got {value!r}")
    for key in ('MAX_EXPONENT', 'DEFAULT_SEED'):
        value = settings.get(key)
        if value is not None and (isinstance(value, bool) or not isinstance(value, int) or value < 0):
            problems.append(f"{key} must be a non-negative integer or null, got {value!r}")
    if 'LOG_LEVEL' in settings and not isinstance(logging.getLevelName(str(settings['LOG_LEVEL']).upper()), int):
        problems.append(f"LOG_LEVEL {settings['LOG_LEVEL']!r} is not a logging level")
    return problems


if __name__ == "__main__":
    path = Path(__file__).parent.parent / "appsettings.json"
    logger.info(f"Loading appsettings from {path}")
    try:
        raw = json.loads(path.read_text())
    except (OSError, ValueError) as e:
        logger.error(f"Cannot read {path}: {e}")
        sys.exit(1)

    settings = load_appsettings(str(path))
    for key in sorted(settings):
        current = getattr(active_config, key, None)
        logger.info(f"{key}: {current!r} -> {settings[key]!r}")
    unused = sorted(set(SETTINGS_KEYS) - set(raw))
    if unused:
        logger.info(f"Not overridden: {', '.join(unused)}")

    problems = check(settings)
    for problem in problems:
        logger.error(problem)
    sys.exit(1 if problems else 0)
