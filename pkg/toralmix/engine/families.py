"""
Counterexample Families

Constructions of epimorphism sets with prescribed mixing behaviour. Every
family is checked by the decision engine before it is returned; a family that
fails its check raises ``VerificationError`` instead of being handed back.

- ``gen_unipotent_family``: unipotent maps, not mixing, every proper subset mixing
- ``gen_eisenstein_poly``: irreducible polynomials with d distinct real roots
- ``gen_epi_family``: ergodic epimorphisms, not mixing, every proper subset mixing
- ``gen_block_triangular``: block upper-triangular semigroup generators
- ``fixtures``: the small named matrices used throughout the tests
"""
import itertools
import logging
from fractions import Fraction
from math import gcd
from typing import Dict, List, Optional, Sequence

from toralmix.engine.cyclo import is_prime, next_prime
from toralmix.engine.groups import enumerate_words, is_finite_order
from toralmix.engine.mixing import is_ergodic, is_mixing_set, spectral_precheck
from toralmix.engine.oracle import SEARCH_LIMIT, higher_order_refute
from toralmix.errors import ContractViolation, VerificationError
from toralmix.exact.lattice import unimodular_completion
from toralmix.exact.matrix import (
    IntMat, IntVec, as_int_matrix, det, identity, integer_inverse, mat_add, mat_mul, mat_pow, mat_scale,
    primitive, rank, transpose, zeros,
)
from toralmix.exact.poly import Poly, count_real_roots
from toralmix.models.episet import EpiSet
from toralmix.models.families import EisensteinPoly
from toralmix.models.verdicts import ProvenMixing

logger = logging.getLogger(__name__)

FIBONACCI = ((1, 1), (1, 0))
S = ((0, -1), (1, 0))
T = ((0, -1), (1, -1))
ALPHA = ((1, 2), (0, 1))
BETA = ((1, 0), (2, 1))
LORENTZ_FORM = ((1, 0, 0), (0, 1, 0), (0, 0, -1))


def _check_size(d: int, s: int):
    if d < 1 or not 2 <= s <= d + 1:
        raise ContractViolation(f"Family size must satisfy 2 <= s <= d + 1, got s={s}, d={d}")


def _fail(message: str):
    logger.error(message)
    raise VerificationError(message)


def circuit_vectors(d: int, s: int) -> List[IntVec]:
    """
    e_1..e_(s-1) followed by their sum: the whole set is dependent and every
    proper subset is independent.
    """
    _check_size(d, s)
    basis = [tuple(1 if i == k else 0 for i in range(d)) for k in range(s - 1)]
    return basis + [tuple(sum(column) for column in zip(*basis))]


def _verify_subsets(family: EpiSet, full_mixing: bool):
    verdict = is_mixing_set(family)
    if verdict.is_mixing != full_mixing:
        _fail(f"Full family verdict {verdict.kind}, expected {'Mixing' if full_mixing else 'NotMixing'}")
    for size in range(2, family.size):
        for subset in itertools.combinations(range(family.size), size):
            if not is_mixing_set(family.subset(subset)).is_mixing:
                _fail(f"Proper subset {subset} is not mixing")


def gen_unipotent_family(d: int, s: int, vectors: Optional[Sequence[Sequence[int]]] = None) -> EpiSet:
    """
    Unipotent maps T_i whose duals I + N_i have ker N_i = <v_i>.

    N_i = U_i J U_i^-1 where U_i is a unimodular completion of v_i and J is the
    nilpotent Jordan block with kernel <e_1>. The maps returned are the
    transposes of I + N_i, so the duals carry the prescribed kernels.

    Args:
        d: Torus dimension
        s: Number of maps, 2 <= s <= d + 1
        vectors: v_1..v_s; defaults to ``circuit_vectors(d, s)``

    Returns:
        EpiSet: Not mixing when the vectors are dependent, mixing otherwise;
            every proper subset is mixing

    Raises:
        ContractViolation: On a bad range, or vectors with a dependent proper subset
        VerificationError: If the engine disagrees with the construction
    """
    _check_size(d, s)
    vectors = [tuple(int(x) for x in v) for v in (vectors if vectors is not None else circuit_vectors(d, s))]
    if len(vectors) != s or any(len(v) != d for v in vectors):
        raise ContractViolation(f"Expected {s} vectors of length {d}")
    for subset in itertools.combinations(vectors, s - 1):
        if rank(subset, d) < s - 1:
            raise ContractViolation("Every proper subset of the vectors must be linearly independent")
    if any(not any(v) for v in vectors):
        raise ContractViolation("Vectors must be nonzero")

    jordan = tuple(tuple(1 if j == i + 1 else 0 for j in range(d)) for i in range(d))
    maps = []
    for v in vectors:
        completion = unimodular_completion(primitive(v))
        nilpotent = mat_mul(mat_mul(completion, jordan), integer_inverse(completion))
        if mat_pow(nilpotent, d) != zeros(d, d):
            _fail(f"N for {v} is not nilpotent")
        maps.append(transpose(mat_add(identity(d), nilpotent)))
    family = EpiSet(d, tuple(maps))

    dependent = rank(vectors, d) < s
    _verify_subsets(family, full_mixing=not dependent)
    logger.info(f"Unipotent family d={d}, s={s}: {'not mixing' if dependent else 'mixing'}")
    return family


def _eisenstein_candidate(d: int, q: int) -> Poly:
    p = Poly.constant(1)
    for i in range(1, d + 1):
        p = p * Poly([-i * q, 1])
    return p + Poly.constant(q)


def _sign_checks(p: Poly, d: int, q: int) -> bool:
    for m in range(d + 1):
        value = p(Fraction((2 * m + 1) * q, 2))
        expected = 1 if (d - m) % 2 == 0 else -1
        if value == 0 or (value > 0) != (expected > 0):
            return False
    return True


def gen_eisenstein_poly(d: int, q: Optional[int] = None) -> EisensteinPoly:
    """
    The polynomial (x - q)(x - 2q)...(x - dq) + q.

    It is irreducible by Eisenstein's criterion at q and, once q is large
    enough, changes sign between the points (2m+1)q/2, m = 0..d, so it has d
    distinct real roots with distinct absolute values. When no q is given the
    first prime >= 4d^2 + 1 passing the sign checks is used; a given q that
    fails them is replaced by the next prime that passes.

    Raises:
        ContractViolation: If d < 1 or q is not prime
        VerificationError: If the Eisenstein conditions or the Sturm count fail
    """
    if d < 1:
        raise ContractViolation(f"Degree must be positive, got {d}")
    if q is not None and not is_prime(q):
        raise ContractViolation(f"q={q} is not prime")
    if d == 1:
        q = 2 if q is None else q
        p = _eisenstein_candidate(1, q)
        return EisensteinPoly(q, p, count_real_roots(p), degenerate=True)

    candidate = q if q is not None else next_prime(4 * d * d + 1)
    while not _sign_checks(_eisenstein_candidate(d, candidate), d, candidate):
        if q is not None:
            logger.warning(f"q={candidate} fails the sign checks; trying the next prime")
        candidate = next_prime(candidate + 1)
    q = candidate
    p = _eisenstein_candidate(d, q)

    coeffs = p.int_coeffs()
    if any(c % q for c in coeffs[:-1]) or coeffs[0] % (q * q) == 0 or coeffs[-1] != 1:
        _fail(f"Eisenstein criterion fails for {p} at q={q}")
    roots = count_real_roots(p)
    if roots != d:
        _fail(f"{p} has {roots} real roots, expected {d}")
    logger.info(f"Eisenstein polynomial at q={q}: {p}")
    return EisensteinPoly(q, p, roots)


def companion(p: Poly) -> IntMat:
    """
    Companion matrix of a monic integer polynomial: ones on the superdiagonal
    and the last row (-c_0, ..., -c_(d-1)), so (1, x, ..., x^(d-1)) at a root
    is an eigenvector.
    """
    if p.degree < 1 or p.lead != 1 or not p.is_integral():
        raise ContractViolation(f"Companion matrices need a monic integer polynomial, got {p}")
    d = p.degree
    coeffs = p.int_coeffs()
    rows = [tuple(1 if j == i + 1 else 0 for j in range(d)) for i in range(d - 1)]
    rows.append(tuple(-c for c in coeffs[:d]))
    return tuple(rows)


def gen_epi_family(d: int, s: int, q: Optional[int] = None) -> EpiSet:
    """
    Ergodic epimorphisms forming a non-mixing set whose proper subsets are mixing.

    With C the companion matrix of ``gen_eisenstein_poly(d)`` and
    A = diag(1, ..., 1, 2, ..., s-1), the duals are c * A^(j-1) C A^(1-j) for
    j = 1..s, c the least positive integer making them integral. Each dual has
    eigenvectors A^(j-1) u for the eigenvectors u of C, and any s of these for
    one eigenvalue span a space of dimension s - 1.

    Raises:
        ContractViolation: If d < 2 or s is out of range
        VerificationError: If a member is not ergodic or the subset verdicts disagree
    """
    if d < 2:
        raise ContractViolation(f"Dimension must be at least 2, got {d}")
    _check_size(d, s)
    c_matrix = companion(gen_eisenstein_poly(d, q).poly)
    diagonal = [1] * (d - s + 2) + list(range(2, s))
    conjugated = []
    for j in range(s):
        left = [Fraction(a) ** j for a in diagonal]
        conjugated.append(tuple(
            tuple(left[r] * c_matrix[r][k] / left[k] for k in range(d)) for r in range(d)
        ))
    scale = 1
    for m in conjugated:
        for row in m:
            for x in row:
                scale = scale * x.denominator // gcd(scale, x.denominator)
    duals = [tuple(tuple(int(x * scale) for x in row) for row in m) for m in conjugated]
    family = EpiSet(d, tuple(transpose(m) for m in duals))

    for index, t in enumerate(family):
        if not is_ergodic(t):
            _fail(f"Member {index} of the epimorphism family is not ergodic")
    _verify_subsets(family, full_mixing=False)
    logger.info(f"Epimorphism family d={d}, s={s} with scale {scale}")
    return family


def gen_block_triangular(
    d1: int,
    d2: int,
    a: Optional[Sequence[Sequence[int]]] = None,
    b: Optional[Sequence[Sequence[int]]] = None,
    c_blocks: Optional[Sequence[Sequence[Sequence[int]]]] = None,
) -> EpiSet:
    """
    Semigroup generators [[A, C], [0, B]], one per C block.

    A and B default to companion matrices of Eisenstein polynomials; C blocks
    default to {0, E_11}. The check runs the generators through ``is_ergodic``,
    confirms that words of different lengths (up to 2) form mixing pairs, and
    runs a bounded order-3 nested relation search. Equal-length words share
    their diagonal blocks and need not form mixing pairs, so they are not checked.

    Raises:
        ContractViolation: If d1 or d2 < 2 or a block has the wrong shape
        VerificationError: If any check fails
    """
    if d1 < 2 or d2 < 2:
        raise ContractViolation(f"Block sizes must be at least 2, got {d1} and {d2}")
    a = as_int_matrix(a, d1) if a is not None else companion(gen_eisenstein_poly(d1).poly)
    b = as_int_matrix(b, d2) if b is not None else companion(gen_eisenstein_poly(d2).poly)
    if c_blocks is None:
        corner = tuple(tuple(1 if (i, j) == (0, 0) else 0 for j in range(d2)) for i in range(d1))
        c_blocks = [zeros(d1, d2), corner]
    generators = []
    for c in c_blocks:
        if len(c) != d1 or any(len(row) != d2 for row in c):
            raise ContractViolation(f"C blocks must be {d1} x {d2}")
        top = [tuple(a[i]) + tuple(c[i]) for i in range(d1)]
        bottom = [(0,) * d1 + tuple(b[i]) for i in range(d2)]
        generators.append(tuple(top + bottom))
    family = EpiSet(d1 + d2, tuple(generators))

    for index, g in enumerate(family):
        if not is_ergodic(g):
            _fail(f"Generator {index} is not ergodic")
    words = list(enumerate_words(family, 2))
    for (w1, m1), (w2, m2) in itertools.product(words, repeat=2):
        if len(w1) < len(w2):
            pair = EpiSet(family.dim, (m1, m2))
            if isinstance(spectral_precheck(pair), ProvenMixing):
                continue
            if not is_mixing_set(pair).is_mixing:
                _fail(f"Words {w1} and {w2} do not form a mixing pair")
    heights = [h for h in (2, 1) if (2 * h + 1) ** (2 * family.dim) <= SEARCH_LIMIT]
    if heights:
        refutation = higher_order_refute(family, order=3, word_len=1, height=heights[0], horizon=12, min_hits=3)
        if refutation is not None:
            _fail(f"Order-3 relation found: {refutation.witness}")
    else:
        logger.warning(f"Dimension {family.dim} is too large for the order-3 relation search; skipped")
    logger.info(f"Block-triangular generators {d1}+{d2}, {len(generators)} generators")
    return family


def _lorentz_columns(bound: int, value: int) -> List[IntVec]:
    span = range(-bound, bound + 1)
    return [v for v in itertools.product(span, repeat=3) if v[0] * v[0] + v[1] * v[1] - v[2] * v[2] == value]


def _lorentz_pairing(u: IntVec, v: IntVec) -> int:
    return u[0] * v[0] + u[1] * v[1] - u[2] * v[2]


def lorentz_generators(bound: int = 3, count: int = 2) -> List[IntMat]:
    """
    Integer matrices B with B^T J B = J for J = diag(1, 1, -1), det B = 1, of
    infinite order and entries in [-bound, bound]; the first ``count`` in
    row-major lexicographic order.

    Columns of such a B are J-orthonormal, so the search runs over columns.
    """
    spacelike = _lorentz_columns(bound, 1)
    timelike = _lorentz_columns(bound, -1)
    found = []
    for c1, c2 in itertools.permutations(spacelike, 2):
        if _lorentz_pairing(c1, c2) != 0:
            continue
        for c3 in timelike:
            if _lorentz_pairing(c1, c3) or _lorentz_pairing(c2, c3):
                continue
            matrix = tuple(zip(c1, c2, c3))
            if det(matrix) != 1:
                continue
            if mat_mul(mat_mul(transpose(matrix), LORENTZ_FORM), matrix) != LORENTZ_FORM:
                _fail(f"Lorentz search produced {matrix}")
            if not is_finite_order(matrix):
                found.append(matrix)
    found.sort(key=lambda m: tuple(x for row in m for x in row))
    if len(found) < count:
        raise ContractViolation(f"Only {len(found)} Lorentz matrices with entries bounded by {bound}")
    return found[:count]


def fixtures() -> Dict[str, EpiSet]:
    """
    Named families:

    - ``st``: the order-4 and order-3 rotations S and T
    - ``scaled_sl``: 2*alpha and 2*beta for the free pair alpha, beta
    - ``not_irr``: generators fixing e_1, ergodic as a group but with
      non-ergodic subgroups
    - ``not_erg``: integer Lorentz matrices, none of them ergodic
    - ``fibonacci``: the single hyperbolic map [[1, 1], [1, 0]]
    """
    return {
        'st': EpiSet.of([S, T]),
        'scaled_sl': EpiSet.of([mat_scale(ALPHA, 2), mat_scale(BETA, 2)]),
        'not_irr': EpiSet.of([
            ((1, 1, 0), (0, 1, 0), (0, 0, 1)),
            ((1, 0, 1), (0, 1, 0), (0, 0, 1)),
            ((1, 0, 0), (0, 2, 1), (0, 1, 1)),
        ]),
        'not_erg': EpiSet.of(lorentz_generators(3, 2)),
        'fibonacci': EpiSet.of([FIBONACCI]),
    }
