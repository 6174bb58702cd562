"""
Mixing Decision Engine

Decides whether a finite set F = {T_1, ..., T_s} of toral epimorphisms is
mixing, and provides the faster spectral criteria that sometimes settle the
question without solving the full system.

F fails to be mixing exactly when, for some exponent l with phi(l) <= d^2,
there are characters x_1..x_s, not all zero, with

    sum_k (dual T_k)^(l n) x_k = 0    for every n >= 1.

The block sequence n -> [(dual T_1)^(l n) | ... | (dual T_s)^(l n)] satisfies
a reversible linear recurrence of order at most s*d, so the relation holding
for n = 1..s*d forces it for all n. ``stabilized_relation_kernel`` solves that
finite system exactly and re-checks n = s*d+1..2*s*d before returning.
"""
import itertools
import logging
from multiprocessing import Pool
from typing import Iterable, List, Optional, Sequence, Tuple

from toralmix.engine.cyclo import has_root_of_unity_root, phi_bounded_orders
from toralmix.errors import ContractViolation, VerificationError
from toralmix.exact.lattice import lattice_saturate
from toralmix.exact.matrix import (
    IntMat, IntVec, charpoly, det, inverse, mat_mul, mat_sub, mat_vec, rational_kernel, rref, transpose,
)
from toralmix.exact.poly import poly_gcd
from toralmix.models.episet import EpiSet
from toralmix.models.verdicts import (
    Inconclusive, Mixing, MixingVerdict, NotMixing, ProvenMixing, ProvenNotMixing, QuotientWitness, SpectralVerdict,
)

logger = logging.getLogger(__name__)

Witness = Tuple[IntVec, ...]


def dual(m: IntMat) -> IntMat:
    """The dual action on characters Z^d, which is the transpose."""
    return transpose(m)


def exponent_set(d: int, max_exponent: Optional[int] = None) -> Tuple[int, ...]:
    """
    Exponents l examined for a d-dimensional family.

    Args:
        d: Torus dimension
        max_exponent: When given, every l in 1..max_exponent is added to L(d^2)

    Returns:
        tuple: Sorted exponents without repetition
    """
    exponents = set(phi_bounded_orders(d * d).orders)
    if max_exponent is not None:
        if max_exponent < 1:
            raise ContractViolation(f"max_exponent must be positive, got {max_exponent}")
        exponents.update(range(1, max_exponent + 1))
    return tuple(sorted(exponents))


def is_ergodic(t: IntMat) -> bool:
    """An epimorphism is ergodic iff no eigenvalue is a root of unity."""
    if det(t) == 0:
        raise ContractViolation("Determinant 0: not an epimorphism")
    return not has_root_of_unity_root(charpoly(t), len(t))


def _block_row(powers: Sequence[IntMat]) -> List[List[int]]:
    d = len(powers[0])
    return [[x for p in powers for x in p[r]] for r in range(d)]


def _relation_holds(powers: Sequence[IntMat], witness: Witness) -> bool:
    d = len(powers[0])
    total = [0] * d
    for p, x in zip(powers, witness):
        total = [a + b for a, b in zip(total, mat_vec(p, x))]
    return all(v == 0 for v in total)


def stabilized_relation_kernel(family: EpiSet, l: int) -> List[Witness]:
    """
    Basis of the persistent relations at exponent l.

    Rows for n = 1..N (N = s*d) are added one block at a time; once they
    reach full rank the kernel is empty and the loop stops early.

    Args:
        family: The epimorphism set
        l: Exponent >= 1

    Returns:
        list: Primitive integer witness tuples (one vector per map), empty
            when no relation exists

    Raises:
        VerificationError: If a kernel vector fails at n = N+1..2N
    """
    if l < 1:
        raise ContractViolation(f"Exponent must be positive, got {l}")
    s, d = family.size, family.dim
    width = s * d
    steps = family.dual_powers(l)
    current = steps
    rows: Tuple = ()
    for n in range(1, width + 1):
        rows, pivots = rref(list(rows) + _block_row(current), width)
        if len(pivots) == width:
            logger.debug(f"l={l}: full rank after n={n}")
            return []
        current = tuple(mat_mul(c, step) for c, step in zip(current, steps))

    kernel = rational_kernel(rows, width)
    witnesses = [tuple(tuple(v[k * d:(k + 1) * d]) for k in range(s)) for v in kernel]

    # current already holds the powers for n = N + 1
    for n in range(width + 1, 2 * width + 1):
        for witness in witnesses:
            if not _relation_holds(current, witness):
                raise VerificationError(f"Relation at exponent {l} breaks at n={n}: {witness}")
        current = tuple(mat_mul(c, step) for c, step in zip(current, steps))
    logger.debug(f"l={l}: kernel dimension {len(witnesses)}")
    return witnesses


def _kernel_job(job: Tuple[EpiSet, int]) -> List[Witness]:
    family, l = job
    return stabilized_relation_kernel(family, l)


def _kernels(family: EpiSet, exponents: Sequence[int], workers: int) -> Iterable[Tuple[int, List[Witness]]]:
    if workers <= 1 or len(exponents) == 1:
        for l in exponents:
            yield l, stabilized_relation_kernel(family, l)
        return
    # map keeps exponent order, so the smallest failing l is still reported
    with Pool(min(workers, len(exponents))) as pool:
        results = pool.map(_kernel_job, [(family, l) for l in exponents])
    yield from zip(exponents, results)


def is_mixing_set(family: EpiSet, max_exponent: Optional[int] = None, workers: int = 1) -> MixingVerdict:
    """
    Decide whether the set is mixing.

    Args:
        family: At least two epimorphisms of the same torus
        max_exponent: Optional override adding every l <= max_exponent
        workers: Process count for the per-exponent loop

    Returns:
        MixingVerdict: ``NotMixing`` with the smallest failing exponent and the
            first canonical kernel tuple, or ``Mixing`` with the exponents checked

    Raises:
        ContractViolation: If the family has fewer than two maps
    """
    if family.size < 2:
        raise ContractViolation("Set mixing needs at least two maps")
    exponents = exponent_set(family.dim, max_exponent)
    for l, kernel in _kernels(family, exponents, workers):
        if kernel:
            witness = kernel[0]
            support = tuple(k for k, x in enumerate(witness) if any(x))
            logger.info(f"Not mixing at l={l}, support {support}")
            return NotMixing(l, witness, support)
    logger.info(f"Mixing; checked l in {exponents}")
    return Mixing(exponents)


def spectral_precheck(family: EpiSet, max_exponent: Optional[int] = None) -> SpectralVerdict:
    """
    Spectral shortcuts over the same exponents as ``is_mixing_set``.

    For each l ascending:
    - two equal powers T_i^l = T_j^l prove the pair, hence F, is not mixing;
    - more than d powers sharing an eigenvalue prove F is not mixing.
    If every pair of powers has coprime characteristic polynomials at every l,
    F is mixing. Otherwise nothing is concluded; when s > d the result notes
    that F is mixing iff every d-subset is.

    Raises:
        ContractViolation: If the family has fewer than two maps
    """
    s, d = family.size, family.dim
    if s < 2:
        raise ContractViolation("Set mixing needs at least two maps")
    exponents = exponent_set(d, max_exponent)
    pairwise_coprime = True
    for l in exponents:
        powers = family.powers(l).maps
        for i, j in itertools.combinations(range(s), 2):
            if powers[i] == powers[j]:
                logger.info(f"T_{i}^{l} = T_{j}^{l}")
                return ProvenNotMixing(l, (i, j), 'equal_powers')
        polys = [charpoly(p) for p in powers]
        if s > d:
            for subset in itertools.combinations(range(s), d + 1):
                common = polys[subset[0]]
                for k in subset[1:]:
                    common = poly_gcd(common, polys[k])
                    if common.is_constant():
                        break
                if not common.is_constant():
                    logger.info(f"Maps {subset} share an eigenvalue at l={l}")
                    return ProvenNotMixing(l, subset, 'common_eigenvalue')
        if pairwise_coprime:
            for i, j in itertools.combinations(range(s), 2):
                if not poly_gcd(polys[i], polys[j]).is_constant():
                    logger.debug(f"l={l}: maps {i} and {j} share an eigenvalue")
                    pairwise_coprime = False
                    break
    if pairwise_coprime:
        return ProvenMixing(exponents)
    return Inconclusive(reduce_to=d if s > d else None)


def _check_epimorphism(t: IntMat, name: str):
    if det(t) == 0:
        raise ContractViolation(f"{name} has determinant 0")


def commuting_pair_criterion(t_i: IntMat, t_j: IntMat) -> bool:
    """
    Mixing test for a commuting pair: {T_i, T_j} is mixing iff T_i^-1 T_j has
    no root-of-unity eigenvalue.

    Raises:
        ContractViolation: If the maps do not commute or one is singular
    """
    _check_epimorphism(t_i, 'T_i')
    _check_epimorphism(t_j, 'T_j')
    if len(t_i) != len(t_j):
        raise ContractViolation("Maps act on tori of different dimension")
    if mat_mul(t_i, t_j) != mat_mul(t_j, t_i):
        raise ContractViolation("The commuting criterion needs commuting maps")
    ratio = mat_mul(inverse(t_i), t_j)
    return not has_root_of_unity_root(charpoly(ratio), len(t_i))


def commuting_family_mixing(family: EpiSet) -> bool:
    """A pairwise-commuting family is mixing iff every pair passes the commuting criterion."""
    if family.size < 2:
        raise ContractViolation("Set mixing needs at least two maps")
    return all(commuting_pair_criterion(family[i], family[j]) for i, j in itertools.combinations(range(family.size), 2))


def pair_quotient_witness(t_1: IntMat, t_2: IntMat, max_exponent: Optional[int] = None) -> Optional[QuotientWitness]:
    """
    Find l and a closed subgroup Y with T_1^l = T_2^l on X/Y.

    Y is described by its annihilator: the characters of the largest subspace
    W inside ker(dual T_1^l - dual T_2^l) invariant under both duals. W is
    tracked through its constraint rows C (W = ker C) and C grows by C*D_1
    and C*D_2 until its rank stops increasing.

    Returns:
        QuotientWitness or None: The first exponent with W != 0 and the
            saturated character lattice of W; None when the pair is mixing
    """
    pair = EpiSet.of([t_1, t_2])
    d = pair.dim
    for l in exponent_set(d, max_exponent):
        d_1, d_2 = pair.dual_powers(l)
        constraints, pivots = rref(mat_sub(d_1, d_2), d)
        while len(pivots) < d:
            grown = list(constraints) + list(mat_mul(constraints, d_1)) + list(mat_mul(constraints, d_2))
            new_constraints, new_pivots = rref(grown, d)
            if len(new_pivots) == len(pivots):
                break
            constraints, pivots = new_constraints, new_pivots
        if len(pivots) == d:
            continue
        basis = rational_kernel(constraints, d)
        sublattice = tuple(lattice_saturate(basis))
        logger.info(f"Quotient witness at l={l} with rank {len(sublattice)}")
        return QuotientWitness(l, sublattice)
    return None


def jointly_mixing(family: EpiSet, max_exponent: Optional[int] = None) -> bool:
    """F together with the identity is mixing iff every member is ergodic and F is mixing."""
    if not all(is_ergodic(t) for t in family):
        return False
    if family.size < 2:
        return True
    return is_mixing_set(family, max_exponent).is_mixing


def minimal_non_mixing_subsets(family: EpiSet, max_exponent: Optional[int] = None) -> List[Tuple[int, ...]]:
    """
    Inclusion-minimal non-mixing subsets of size 2..min(s, d+1).

    Subsets are visited by size then lexicographically; supersets of a subset
    already found are skipped. The list is empty iff F is mixing.
    """
    s, d = family.size, family.dim
    found: List[Tuple[int, ...]] = []
    for size in range(2, min(s, d + 1) + 1):
        for subset in itertools.combinations(range(s), size):
            if any(set(m) <= set(subset) for m in found):
                continue
            if not is_mixing_set(family.subset(subset), max_exponent).is_mixing:
                logger.debug(f"Minimal non-mixing subset {subset}")
                found.append(subset)
    return found


def subset_reduction(family: EpiSet, max_exponent: Optional[int] = None) -> bool:
    """Mixing of F derived from its subsets of size at most d+1 alone."""
    if family.size < 2:
        raise ContractViolation("Set mixing needs at least two maps")
    return not minimal_non_mixing_subsets(family, max_exponent)
