"""
Bounded Group Scans

Semi-decisions for properties of the group (or semigroup) generated by a set
of epimorphisms:

- ``group_mixing_scan`` looks for an element of infinite order with a
  root-of-unity eigenvalue, which rules out mixing of the action;
- ``dual_orbit_scan`` looks for a finite orbit of a nonzero character, which
  rules out ergodicity.

Neither scan ever concludes that the action is mixing or ergodic; a clean run
only reports how far it looked.
"""
import logging
from collections import deque
from typing import Iterator, List, Sequence, Tuple

from toralmix.engine.cyclo import has_root_of_unity_root, torsion_exponent
from toralmix.errors import ContractViolation, VerificationError
from toralmix.exact.matrix import (
    IntMat, as_int_matrix, charpoly, det, identity, integer_inverse, is_unimodular, mat_mul, mat_pow, mat_vec,
)
from toralmix.models.episet import EpiSet
from toralmix.models.verdicts import CleanUpTo, ExceedsCap, FiniteOrbit, GroupScanReport, OrbitScanReport, Refuted

logger = logging.getLogger(__name__)

Letter = Tuple[int, bool]
Word = Tuple[Letter, ...]


def is_finite_order(g: IntMat) -> bool:
    """
    True iff g^M = I for the torsion exponent M of its dimension.

    Only matrices with determinant +1 or -1 can have finite order.
    """
    determinant = det(g)
    if determinant == 0:
        raise ContractViolation("Determinant 0: not an epimorphism")
    if determinant not in (1, -1):
        return False
    d = len(g)
    return mat_pow(g, torsion_exponent(d)) == identity(d)


def _letters(generators: EpiSet, use_inverses: bool) -> List[Tuple[Letter, IntMat]]:
    letters = []
    for index, g in enumerate(generators):
        letters.append(((index, False), g))
        if use_inverses:
            letters.append(((index, True), integer_inverse(g)))
    return letters


def word_matrix(generators: EpiSet, word: Sequence[Letter]) -> IntMat:
    """The product a_1 a_2 ... a_k of the letters of a word."""
    result = identity(generators.dim)
    for index, inverted in word:
        g = generators[index]
        result = mat_mul(result, integer_inverse(g) if inverted else g)
    return result


def enumerate_words(generators: EpiSet, max_len: int, use_inverses: bool = False) -> Iterator[Tuple[Word, IntMat]]:
    """
    Freely reduced words of length 1..max_len in breadth-first, letter order,
    skipping any word whose matrix was already produced (the identity counts
    as produced).

    Yields:
        tuple: (word, matrix) pairs
    """
    if max_len < 0:
        raise ContractViolation(f"Word length must be non-negative, got {max_len}")
    if use_inverses and not all(is_unimodular(g) for g in generators):
        raise ContractViolation("Inverses requested for a generator with determinant other than +1 or -1")
    letters = _letters(generators, use_inverses)
    seen = {identity(generators.dim)}
    frontier: List[Tuple[Word, IntMat]] = [((), identity(generators.dim))]
    for _ in range(max_len):
        next_frontier = []
        for word, matrix in frontier:
            for letter, g in letters:
                if word and word[-1][0] == letter[0] and word[-1][1] != letter[1]:
                    continue
                product = mat_mul(matrix, g)
                if product in seen:
                    continue
                seen.add(product)
                extended = word + (letter,)
                next_frontier.append((extended, product))
                yield extended, product
        frontier = next_frontier
        if not frontier:
            break


def group_mixing_scan(generators: EpiSet, max_len: int, use_inverses: bool = False) -> GroupScanReport:
    """
    Search for an infinite-order element with a root-of-unity eigenvalue.

    Args:
        generators: The generating set
        max_len: Longest word examined
        use_inverses: Include inverse letters (group instead of semigroup)

    Returns:
        GroupScanReport: ``Refuted`` with the shortlex-first violating word, or
            ``CleanUpTo`` with the number of distinct elements examined

    Raises:
        ContractViolation: If inverses are requested for a non-unimodular generator
    """
    examined = 0
    for word, matrix in enumerate_words(generators, max_len, use_inverses):
        examined += 1
        if is_finite_order(matrix):
            continue
        if has_root_of_unity_root(charpoly(matrix), generators.dim):
            logger.info(f"Refuted by word of length {len(word)}")
            return Refuted(word, matrix)
    logger.info(f"No violation among {examined} elements up to length {max_len}")
    return CleanUpTo(max_len, examined)


def dual_orbit_scan(generators: EpiSet, chi: Sequence[int], cap: int) -> OrbitScanReport:
    """
    Breadth-first closure of a character under the dual maps, plus their
    inverses when every generator is unimodular.

    Raises:
        ContractViolation: If chi is zero or has the wrong dimension
    """
    chi = tuple(int(x) for x in chi)
    if len(chi) != generators.dim:
        raise ContractViolation(f"Character has dimension {len(chi)}, expected {generators.dim}")
    if not any(chi):
        raise ContractViolation("The trivial character has a trivial orbit")
    if cap < 1:
        raise ContractViolation(f"Orbit cap must be positive, got {cap}")
    maps = list(generators.duals())
    if all(is_unimodular(g) for g in generators):
        maps += [integer_inverse(m) for m in maps]
    orbit = [chi]
    seen = {chi}
    queue = deque([chi])
    while queue:
        v = queue.popleft()
        for m in maps:
            w = mat_vec(m, v)
            if w in seen:
                continue
            seen.add(w)
            orbit.append(w)
            if len(orbit) > cap:
                logger.info(f"Orbit of {chi} exceeds {cap}")
                return ExceedsCap(cap)
            queue.append(w)
    logger.info(f"Finite orbit of size {len(orbit)}")
    return FiniteOrbit(tuple(orbit))


def conjugate_family(gamma: Sequence[Sequence[int]], delta: Sequence[Sequence[int]], count: int) -> EpiSet:
    """
    The maps delta^-i gamma delta^i for i = 1..count; all share the
    characteristic polynomial of gamma.

    Raises:
        ContractViolation: If delta is not unimodular or gamma is singular
        VerificationError: If a conjugate's characteristic polynomial differs
    """
    gamma, delta = as_int_matrix(gamma), as_int_matrix(delta, len(gamma))
    if det(gamma) == 0:
        raise ContractViolation("gamma has determinant 0")
    if not is_unimodular(delta):
        raise ContractViolation("delta must have determinant +1 or -1")
    if count < 1:
        raise ContractViolation(f"count must be positive, got {count}")
    delta_inverse = integer_inverse(delta)
    expected = charpoly(gamma)
    maps = []
    left, right = identity(len(gamma)), identity(len(gamma))
    for _ in range(count):
        left, right = mat_mul(left, delta_inverse), mat_mul(right, delta)
        t = mat_mul(mat_mul(left, gamma), right)
        if charpoly(t) != expected:
            raise VerificationError(f"Conjugate {t} does not share the characteristic polynomial {expected}")
        maps.append(t)
    return EpiSet(len(gamma), tuple(maps))
