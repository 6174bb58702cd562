"""
Fixture Report for Toral Mix

Runs the named families through the exact engine and logs one line per
family: ergodicity of each map, the set-mixing verdict and the bounded
group scan. Useful as a smoke test after changing the exact layer.

Usage:
    python scripts/run_fixtures.py [--word-len N]
"""
import sys
import logging
import argparse
from pathlib import Path

# Add parent directory to path for imports
sys.path.append(str(Path(__file__).parent.parent))

from toralmix import LOG_FORMAT
from toralmix.engine.families import fixtures
from toralmix.engine.groups import group_mixing_scan
from toralmix.engine.mixing import is_ergodic, is_mixing_set
from toralmix.errors import ToralMixError
from toralmix.utils.serialize import dumps

logging.basicConfig(level=logging.INFO, format=LOG_FORMAT)
logger = logging.getLogger("fixtures")


def report_family(name, family, word_len):
    """Collect the engine's answers for one family."""
    result = {
        'name': name,
        'dim': family.dim,
        'ergodic': [is_ergodic(t) for t in family],
        'group_scan': group_mixing_scan(family, word_len),
    }
    if family.size >= 2:
        result['mixing'] = is_mixing_set(family)
    return result


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[1])
    parser.add_argument('--word-len', type=int, default=3)
    args = parser.parse_args(argv)

    failures = 0
    for name, family in sorted(fixtures().items()):
        try:
            logger.info(dumps(report_family(name, family, args.word_len)))
        except ToralMixError as e:
            failures += 1
            logger.error(f"{name}: {e}")
    if failures:
        logger.error(f"{failures} fixture(s) failed")
        return 1
    logger.info("All fixtures computed")
    return 0


if __name__ == "__main__":
    sys.exit(main())
