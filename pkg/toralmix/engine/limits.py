"""
Correlation Limits Along Progressions

For trigonometric polynomials f_1..f_s the correlation

    integral f_1(T_1^n x) ... f_s(T_s^n x) dm(x)

equals the sum of f_1^(chi_1)...f_s^(chi_s) over character tuples with
sum_k (dual T_k)^n chi_k = 0. After passing to a power l under which no two
distinct eigenvalues of the family differ by a root of unity, the indicator of
that equation is eventually constant on every residue class mod l, so each
progression n = k (mod l) has an exact limit.
"""
import itertools
import logging
from math import lcm
from typing import Optional, Sequence, Tuple

from toralmix.engine.cyclo import euler_phi, root_of_unity_orders
from toralmix.errors import ContractViolation, VerificationError
from toralmix.exact.matrix import IntVec, charpoly, mat_mul, mat_pow, mat_vec
from toralmix.exact.poly import ratio_polynomial
from toralmix.models.episet import EpiSet
from toralmix.models.trigpoly import ONE, ZERO, ComplexRational, ProgressionLimit, TrigPoly

logger = logging.getLogger(__name__)


def ratio_orders(family: EpiSet) -> Tuple[int, ...]:
    """
    Orders n in L(d^2) for which some eigenvalue ratio mu / lambda of the
    family is a primitive n-th root of unity.
    """
    d = family.dim
    polys = [charpoly(t) for t in family]
    orders = set()
    for p_i, p_j in itertools.product(polys, repeat=2):
        orders.update(root_of_unity_orders(ratio_polynomial(p_i, p_j), d * d))
    return tuple(sorted(orders))


def spec2_exponent(family: EpiSet) -> int:
    """
    Smallest-by-construction modulus l such that, for the powers T_k^l, two
    eigenvalues whose ratio is a root of unity are equal.

    Returns:
        int: lcm of the detected ratio orders

    Examples:
        identity with minus identity on the circle gives 2
    """
    l = lcm(*ratio_orders(family))
    bound = family.dim * family.dim
    if euler_phi(l) > bound:
        logger.warning(f"Modulus {l} has totient {euler_phi(l)} > {bound}; using it anyway")
    logger.debug(f"Progression modulus {l}")
    return l


def _check_characters(family: EpiSet, chars: Sequence[Sequence[int]]) -> Tuple[IntVec, ...]:
    if len(chars) != family.size:
        raise ContractViolation(f"Expected {family.size} characters, got {len(chars)}")
    frozen = tuple(tuple(int(x) for x in chi) for chi in chars)
    if any(len(chi) != family.dim for chi in frozen):
        raise ContractViolation(f"Characters must have dimension {family.dim}")
    return frozen


def _progression_sum(powers, chars) -> Tuple[int, ...]:
    total = [0] * len(chars[0])
    for p, chi in zip(powers, chars):
        total = [a + b for a, b in zip(total, mat_vec(p, chi))]
    return tuple(total)


def character_limit(family: EpiSet, l: int, residue: int, chars: Sequence[Sequence[int]]) -> int:
    """
    Limit of the indicator [sum_k (dual T_k)^n chi_k = 0] along n = residue (mod l).

    Checks n = residue + l*j for j = 0..s*d. The progression values satisfy a
    reversible recurrence of order at most s*d, so all-zero there means zero
    everywhere; 2*s*d further points are re-checked.

    Args:
        family: The epimorphism set
        l: Modulus, normally ``spec2_exponent(family)``
        residue: Residue class 0 <= residue < l
        chars: One character per map

    Returns:
        int: 1 if the relation holds along the whole progression, else 0

    Raises:
        ContractViolation: On a residue out of range or mismatched characters
        VerificationError: If the relation holds at the first points but not later
    """
    if l < 1 or not 0 <= residue < l:
        raise ContractViolation(f"Residue {residue} is not in 0..{l - 1}")
    chars = _check_characters(family, chars)
    duals = family.duals()
    steps = tuple(mat_pow(t, l) for t in duals)
    current = tuple(mat_pow(t, residue) for t in duals)
    depth = family.size * family.dim
    for j in range(depth + 1):
        if any(_progression_sum(current, chars)):
            return 0
        current = tuple(mat_mul(c, step) for c, step in zip(current, steps))
    for j in range(depth + 1, 3 * depth + 1):
        if any(_progression_sum(current, chars)):
            raise VerificationError(f"Relation {chars} fails at n={residue + l * j} after {depth + 1} zeros")
        current = tuple(mat_mul(c, step) for c, step in zip(current, steps))
    return 1


def _check_functions(family: EpiSet, fs: Sequence[TrigPoly]):
    if len(fs) != family.size:
        raise ContractViolation(f"Expected {family.size} trigonometric polynomials, got {len(fs)}")
    for f in fs:
        if f.dim != family.dim:
            raise ContractViolation(f"Trigonometric polynomial has dimension {f.dim}, expected {family.dim}")


def trigpoly_limit(family: EpiSet, fs: Sequence[TrigPoly], residue: int, l: Optional[int] = None) -> ComplexRational:
    """
    Exact limit of the correlation along n = residue (mod l).

    Args:
        family: The epimorphism set
        fs: One trigonometric polynomial per map
        residue: Residue class
        l: Modulus; ``spec2_exponent(family)`` when omitted

    Returns:
        ComplexRational: Sum of coefficient products over persistent relations
    """
    _check_functions(family, fs)
    if l is None:
        l = spec2_exponent(family)
    total = ZERO
    supports = [f.support() for f in fs]
    for chars in itertools.product(*supports):
        if character_limit(family, l, residue, chars):
            product = ONE
            for f, chi in zip(fs, chars):
                product = product * f.coefficient(chi)
            total = total + product
    return total


def progression_limits(family: EpiSet, fs: Sequence[TrigPoly]) -> ProgressionLimit:
    """Limits for every residue class modulo ``spec2_exponent(family)``."""
    _check_functions(family, fs)
    l = spec2_exponent(family)
    values = tuple(trigpoly_limit(family, fs, k, l) for k in range(l))
    return ProgressionLimit(l, values)


def cesaro_limit(family: EpiSet, fs: Sequence[TrigPoly]) -> ComplexRational:
    """The Cesaro limit of the correlation sequence: the mean of the progression limits."""
    return progression_limits(family, fs).average()
