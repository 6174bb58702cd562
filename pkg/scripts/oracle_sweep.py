"""
Oracle Sweep

Draws random families of integer matrices and compares the exact mixing
verdict with the brute-force oracle:

- NotMixing: the certificate must replay for the requested depth
- Mixing: for every exponent l in the searched set, no small character
  tuple for the l-th powers may vanish at every time up to s*d, since the
  relation sequence satisfies a recurrence of that order

Disagreements are logged with the offending family and counted in the exit
status.

Usage:
    python scripts/oracle_sweep.py --count 200 --sizes 2 3 --dims 1 2 3 --height 2 --seed 0
"""
import sys
import logging
import argparse
from pathlib import Path

import numpy as np

# Add parent directory to path for imports
sys.path.append(str(Path(__file__).parent.parent))

from toralmix import LOG_FORMAT
from toralmix.engine.mixing import exponent_set, is_mixing_set
from toralmix.engine.oracle import brute_force_relation_search, verify_witness
from toralmix.exact.matrix import det
from toralmix.models.episet import EpiSet
from toralmix.utils.serialize import dumps

logging.basicConfig(level=logging.INFO, format=LOG_FORMAT)
logger = logging.getLogger("oracle_sweep")


def random_family(rng, size, dim, bound):
    """Draw ``size`` nonsingular integer matrices with entries in [-bound, bound]."""
    maps = []
    while len(maps) < size:
        m = tuple(tuple(int(x) for x in row) for row in rng.integers(-bound, bound + 1, size=(dim, dim)))
        if det(m) != 0:
            maps.append(m)
    return EpiSet.of(maps)


def agrees(family, depth, height):
    verdict = is_mixing_set(family)
    if not verdict.is_mixing:
        return verify_witness(family, verdict.exponent, verdict.witness, depth)
    steps = family.size * family.dim
    return all(
        brute_force_relation_search(family.powers(l), height=height, horizon=steps, min_hits=steps) is None
        for l in exponent_set(family.dim)
    )


def main(argv=None):
    parser = argparse.ArgumentParser(description="Cross-check the engine against the oracle")
    parser.add_argument('--count', type=int, default=200)
    parser.add_argument('--sizes', type=int, nargs='+', default=[2, 3])
    parser.add_argument('--dims', type=int, nargs='+', default=[1, 2, 3])
    parser.add_argument('--bound', type=int, default=3)
    parser.add_argument('--height', type=int, default=2)
    parser.add_argument('--depth', type=int, default=8)
    parser.add_argument('--seed', type=int, default=0)
    args = parser.parse_args(argv)

    rng = np.random.default_rng(args.seed)
    disagreements = 0
    for index in range(args.count):
        size, dim = int(rng.choice(args.sizes)), int(rng.choice(args.dims))
        family = random_family(rng, size, dim, args.bound)
        if not agrees(family, args.depth, args.height):
            disagreements += 1
            logger.error(f"Disagreement on family {index}: {dumps(family)}")
    logger.info(f"{args.count} families, {disagreements} disagreement(s)")
    return 1 if disagreements else 0


if __name__ == "__main__":
    sys.exit(main())
