"""
Independent Oracles

Checks of the decision engine that share none of its linear algebra:

- ``brute_force_relation_search`` enumerates small character tuples and counts
  the n for which sum_k (dual T_k)^n chi_k vanishes;
- ``mc_correlation`` estimates m(T_1^-n B_1 ∩ ... ∩ T_s^-n B_s) by sampling;
- ``verify_witness`` replays a certificate by repeated matrix-vector products;
- ``higher_order_refute`` searches nested word products for relations that
  break mixing of higher order;
- ``cesaro_correlation`` averages a grid quadrature of the correlation of
  trigonometric polynomials.

Candidate tuples are screened modulo a large prime with numpy and every
reported witness is confirmed in exact integer arithmetic.
"""
import itertools
import logging
from fractions import Fraction
from math import gcd
from multiprocessing import Pool
from typing import List, Optional, Sequence, Tuple

import numpy as np

from toralmix.engine.cyclo import next_prime
from toralmix.engine.groups import enumerate_words, is_finite_order
from toralmix.errors import ContractViolation
from toralmix.exact.matrix import IntMat, IntVec, det, identity, mat_mul, mat_pow, mat_vec, transpose
from toralmix.models.boxes import BoxSet, MCEstimate
from toralmix.models.episet import EpiSet
from toralmix.models.trigpoly import TrigPoly
from toralmix.models.verdicts import HigherOrderWitness

logger = logging.getLogger(__name__)

Witness = Tuple[IntVec, ...]

SCREEN_PRIME = 1_000_000_007
TWO_64 = 1 << 64
CHUNK = 1 << 16
SEARCH_LIMIT = 1 << 22


def _inverse_mod(m: IntMat, p: int) -> List[List[int]]:
    n = len(m)
    a = [[x % p for x in row] + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(m)]
    for c in range(n):
        pivot = next(i for i in range(c, n) if a[i][c])
        a[c], a[pivot] = a[pivot], a[c]
        scale = pow(a[c][c], -1, p)
        a[c] = [x * scale % p for x in a[c]]
        for i in range(n):
            if i != c and a[i][c]:
                factor = a[i][c]
                a[i] = [(x - factor * y) % p for x, y in zip(a[i], a[c])]
    return [row[n:] for row in a]


def _is_canonical(flat: Sequence[int]) -> bool:
    common = 0
    for x in flat:
        common = gcd(common, x)
    if common != 1:
        return False
    return next(x for x in flat if x != 0) > 0


def _relation_value(matrices: Sequence[IntMat], witness: Witness) -> Tuple[int, ...]:
    total = [0] * len(witness[0])
    for m, x in zip(matrices, witness):
        total = [a + b for a, b in zip(total, mat_vec(m, x))]
    return tuple(total)


def _relation_search(
    sequence: Sequence[Sequence[IntMat]], dim: int, height: int, min_hits: int
) -> Optional[Tuple[Witness, Tuple[int, ...]]]:
    """
    Search tuples (chi_1..chi_s) with entries in [-height, height] for which
    sum_k sequence[n-1][k] chi_k = 0 at ``min_hits`` or more n.

    The first s-1 characters are enumerated; chi_s is solved modulo a prime not
    dividing any det of the last matrix, lifted to the symmetric residue and
    kept when it fits the height bound. Survivors are ordered by max-norm then
    lexicographically and confirmed exactly.
    """
    s = len(sequence[0])
    if s < 2:
        return None
    p = SCREEN_PRIME
    while any(det(step[-1]) % p == 0 for step in sequence):
        p = next_prime(p + 1)
    prefix_len = (s - 1) * dim
    if (2 * height + 1) ** prefix_len > SEARCH_LIMIT:
        raise ContractViolation(f"Search over {2 * height + 1}^{prefix_len} prefixes exceeds the limit {SEARCH_LIMIT}")
    prefixes = np.indices((2 * height + 1,) * prefix_len, dtype=np.int64).reshape(prefix_len, -1).T - height
    hits = {}
    for n, matrices in enumerate(sequence, start=1):
        last_inverse = _inverse_mod(matrices[-1], p)
        blocks = []
        for m in matrices[:-1]:
            solved = [[(-x) % p for x in row] for row in mat_mul(last_inverse, m)]
            blocks.append(np.array(solved, dtype=np.int64))
        stacked = np.concatenate(blocks, axis=1)
        last = (prefixes @ stacked.T) % p
        last = np.where(last > p // 2, last - p, last)
        fits = np.nonzero(np.all(np.abs(last) <= height, axis=1))[0]
        for index in fits:
            key = (int(index), tuple(int(x) for x in last[index]))
            hits.setdefault(key, []).append(n)

    candidates = []
    for (index, tail), ns in hits.items():
        if len(ns) < min_hits:
            continue
        flat = tuple(int(x) for x in prefixes[index]) + tail
        if any(flat) and _is_canonical(flat):
            candidates.append((max(abs(x) for x in flat), flat))
    candidates.sort()
    logger.debug(f"{len(candidates)} screened candidates")
    for _, flat in candidates:
        witness = tuple(flat[k * dim:(k + 1) * dim] for k in range(s))
        confirmed = tuple(n for n, matrices in enumerate(sequence, start=1) if not any(_relation_value(matrices, witness)))
        if len(confirmed) >= min_hits:
            return witness, confirmed
    return None


def _check_bounds(height: int, horizon: int, min_hits: int):
    if height < 1 or horizon < 1 or min_hits < 1:
        raise ContractViolation("height, horizon and min_hits must all be positive")


def brute_force_relation_search(family: EpiSet, height: int, horizon: int, min_hits: int) -> Optional[Witness]:
    """
    Find a primitive character tuple of height at most ``height`` with
    sum_k (dual T_k)^n chi_k = 0 for at least ``min_hits`` values of n in 1..horizon.

    Returns:
        tuple or None: The first tuple by max-norm then lexicographic order
    """
    _check_bounds(height, horizon, min_hits)
    duals = family.duals()
    sequence = []
    current = duals
    for _ in range(horizon):
        sequence.append(current)
        current = tuple(mat_mul(c, t) for c, t in zip(current, duals))
    found = _relation_search(sequence, family.dim, height, min_hits)
    if found is None:
        return None
    witness, confirmed = found
    logger.info(f"Oracle witness {witness} vanishes at n in {confirmed}")
    return witness


def verify_witness(family: EpiSet, l: int, witness: Sequence[Sequence[int]], depth: int) -> bool:
    """
    Replay a certificate: sum_k (dual T_k)^(l n) x_k = 0 for n = 1..depth.

    Raises:
        ContractViolation: If the tuple has the wrong shape or is all zero
    """
    if l < 1 or depth < 1:
        raise ContractViolation("Exponent and depth must be positive")
    if len(witness) != family.size or any(len(x) != family.dim for x in witness):
        raise ContractViolation(f"Witness must hold {family.size} vectors of length {family.dim}")
    vectors = [tuple(int(v) for v in x) for x in witness]
    if not any(any(x) for x in vectors):
        raise ContractViolation("The zero tuple is not a witness")
    steps = family.dual_powers(l)
    for _ in range(depth):
        vectors = [mat_vec(step, x) for step, x in zip(steps, vectors)]
        total = [sum(column) for column in zip(*vectors)]
        if any(total):
            return False
    return True


def _threshold(value: Fraction) -> int:
    return -(-(value.numerator << 64) // value.denominator)


def _mc_chunk(job) -> int:
    seed, count, matrices, bounds = job
    rng = np.random.default_rng(seed)
    hits = 0
    remaining = count
    d = len(matrices[0])
    while remaining:
        size = min(remaining, CHUNK)
        points = rng.integers(0, np.iinfo(np.uint64).max, size=(size, d), endpoint=True, dtype=np.uint64)
        inside = np.ones(size, dtype=bool)
        for matrix, box in zip(matrices, bounds):
            for row, (lower, upper) in zip(matrix, box):
                image = np.zeros(size, dtype=np.uint64)
                for j, entry in enumerate(row):
                    # uint64 arithmetic wraps, which is reduction mod 1 of x = X / 2^64
                    image += np.uint64(entry) * points[:, j]
                inside &= image >= np.uint64(lower)
                if upper < TWO_64:
                    inside &= image < np.uint64(upper)
        hits += int(np.count_nonzero(inside))
        remaining -= size
    return hits


def mc_correlation(
    family: EpiSet, n: int, boxes: Sequence[BoxSet], samples: int, seed: int, workers: int = 1
) -> MCEstimate:
    """
    Monte Carlo estimate of m(T_1^-n B_1 ∩ ... ∩ T_s^-n B_s).

    Points have coordinates X / 2^64 with X uniform in [0, 2^64), so T^n x mod 1
    is computed exactly in wrapping 64-bit arithmetic and only the sampling is
    random. The seed is split into ``workers`` independent substreams with a
    fixed share of the samples each.

    Args:
        family: The epimorphism set
        n: Time, n >= 0
        boxes: One box per map
        samples: Number of points
        seed: Seed for numpy's SeedSequence
        workers: Substream (and process) count

    Returns:
        MCEstimate: Hit fraction with its standard error
    """
    if samples < 1 or n < 0 or workers < 1:
        raise ContractViolation("samples and workers must be positive and n non-negative")
    if len(boxes) != family.size or any(box.dim != family.dim for box in boxes):
        raise ContractViolation(f"Expected {family.size} boxes of dimension {family.dim}")
    matrices = [tuple(tuple(x % TWO_64 for x in row) for row in mat_pow(t, n)) for t in family]
    bounds = [[(_threshold(a), _threshold(b)) for a, b in box.intervals] for box in boxes]
    streams = np.random.SeedSequence(seed).spawn(workers)
    shares = [samples // workers + (1 if i < samples % workers else 0) for i in range(workers)]
    jobs = [(stream, share, matrices, bounds) for stream, share in zip(streams, shares) if share]
    if workers > 1:
        with Pool(workers) as pool:
            counts = pool.map(_mc_chunk, jobs)
    else:
        counts = [_mc_chunk(job) for job in jobs]
    hits = sum(counts)
    estimate = hits / samples
    stderr = float(np.sqrt(estimate * (1.0 - estimate) / samples))
    logger.info(f"Monte Carlo n={n}: {estimate:.6f} +/- {stderr:.6f}")
    return MCEstimate(estimate, stderr, samples, hits)


def higher_order_refute(
    generators: EpiSet,
    order: int,
    word_len: int,
    height: int,
    horizon: int,
    use_inverses: bool = False,
    min_hits: int = 2,
) -> Optional[HigherOrderWitness]:
    """
    Bounded search for a relation that breaks mixing of order ``order``.

    Words of length up to ``word_len`` and infinite order are combined. In
    semigroup mode the relation is nested,
    sum_j (dual w_1)^n ... (dual w_j)^n x_j = 0, over every ordered choice of
    words with repetition. With ``use_inverses`` the group is searched and the
    relation is sum_j (dual w_j)^n x_j = 0 over sets of distinct words.

    Returns:
        HigherOrderWitness or None: A relation with at least ``min_hits`` exact
            zeros in 1..horizon; None is inconclusive
    """
    if order < 2:
        raise ContractViolation(f"Mixing order must be at least 2, got {order}")
    _check_bounds(height, horizon, min_hits)
    words = [(word, transpose(m)) for word, m in enumerate_words(generators, word_len, use_inverses) if not is_finite_order(m)]
    choices = itertools.combinations(words, order) if use_inverses else itertools.product(words, repeat=order)
    d = generators.dim
    for choice in choices:
        duals = [m for _, m in choice]
        sequence = []
        current = [identity(d)] * order
        for _ in range(horizon):
            current = [mat_mul(c, t) for c, t in zip(current, duals)]
            if use_inverses:
                sequence.append(tuple(current))
            else:
                nested, product = [], identity(d)
                for c in current:
                    product = mat_mul(product, c)
                    nested.append(product)
                sequence.append(tuple(nested))
        found = _relation_search(sequence, d, height, min_hits)
        if found is not None:
            witness, confirmed = found
            logger.info(f"Order-{order} relation for words {[w for w, _ in choice]}")
            return HigherOrderWitness(tuple(w for w, _ in choice), witness, confirmed, nested=not use_inverses)
    return None


def cesaro_correlation(family: EpiSet, fs: Sequence[TrigPoly], horizon: int, grid: int) -> complex:
    """
    Average over n = 1..horizon of a midpoint-grid quadrature of
    integral f_1(T_1^n x) ... f_s(T_s^n x) dm(x).

    The grid has ``grid`` points per axis at x_i = (2 j_i + 1) / (2 grid), so
    every phase <(dual T^n) chi, x> is an integer multiple of 1 / (2 grid)
    and is reduced exactly before the exponential is taken.
    """
    if horizon < 1 or grid < 1:
        raise ContractViolation("horizon and grid must be positive")
    if len(fs) != family.size:
        raise ContractViolation(f"Expected {family.size} trigonometric polynomials, got {len(fs)}")
    d = family.dim
    modulus = 2 * grid
    odd = 2 * np.indices((grid,) * d).reshape(d, -1).T.astype(np.int64) + 1
    duals = family.duals()
    current = duals
    total = 0j
    for _ in range(horizon):
        product = np.ones(odd.shape[0], dtype=np.complex128)
        for power, f in zip(current, fs):
            values = np.zeros(odd.shape[0], dtype=np.complex128)
            for chi, coeff in f.terms.items():
                image = np.array([x % modulus for x in mat_vec(power, chi)], dtype=np.int64)
                phase = (odd @ image) % modulus
                values += complex(coeff) * np.exp(2j * np.pi * phase / modulus)
            product *= values
        total += product.mean()
        current = tuple(mat_mul(c, t) for c, t in zip(current, duals))
    return total / horizon
