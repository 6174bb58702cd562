"""
Totients and Roots of Unity

Euler totients, the exponent sets L(B) = {n : phi(n) <= B}, the torsion
exponent M(d) = lcm L(d), cyclotomic polynomials by exact division and the
root-of-unity test gcd(p, x^M - 1) != 1.
"""
import logging
from dataclasses import dataclass
from functools import lru_cache
from math import isqrt, lcm
from typing import Tuple

from toralmix.errors import ContractViolation
from toralmix.exact.poly import Poly, poly_gcd, powmod

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class OrderSet:
    """
    Attributes:
        bound (int): The totient bound B
        orders (tuple): Every n >= 1 with phi(n) <= B, ascending
    """
    bound: int
    orders: Tuple[int, ...]

    def __iter__(self):
        return iter(self.orders)

    def __contains__(self, n: int) -> bool:
        return n in self.orders

    def __len__(self) -> int:
        return len(self.orders)


def euler_phi(n: int) -> int:
    """
    Euler's totient by trial-division factorization.

    Examples:
        >>> euler_phi(12)
        4
    """
    if n < 1:
        raise ContractViolation(f"Totient is defined for n >= 1, got {n}")
    result, rest, p = n, n, 2
    while p * p <= rest:
        if rest % p == 0:
            while rest % p == 0:
                rest //= p
            result -= result // p
        p += 1
    if rest > 1:
        result -= result // rest
    return result


@lru_cache(maxsize=None)
def phi_bounded_orders(bound: int) -> OrderSet:
    """
    All n with phi(n) <= bound.

    phi(n) >= sqrt(n / 2) limits the search to n <= 2 * bound^2 + 2; each
    member is checked against the totient directly.

    Args:
        bound: The totient bound B >= 1

    Returns:
        OrderSet: The sorted orders
    """
    if bound < 1:
        raise ContractViolation(f"Totient bound must be positive, got {bound}")
    limit = 2 * bound * bound + 2
    orders = tuple(n for n in range(1, limit + 1) if euler_phi(n) <= bound)
    logger.debug(f"L({bound}) = {orders}")
    return OrderSet(bound, orders)


@lru_cache(maxsize=None)
def torsion_exponent(d: int) -> int:
    """M(d) = lcm of phi_bounded_orders(d); gamma^M = I for every finite-order gamma in GL(d, Q)."""
    return lcm(*phi_bounded_orders(d).orders)


@lru_cache(maxsize=None)
def cyclotomic(n: int) -> Poly:
    """
    The n-th cyclotomic polynomial, from x^n - 1 divided by every Phi_m with m | n, m < n.
    """
    if n < 1:
        raise ContractViolation(f"Cyclotomic index must be positive, got {n}")
    result = Poly.x_pow_minus_one(n)
    for m in range(1, n):
        if n % m == 0:
            result = result.exact_div(cyclotomic(m))
    return result


def has_root_of_unity_root(p: Poly, d: int) -> bool:
    """
    Decide whether p has a root of unity among its complex roots.

    Any such root has degree at most deg p <= d over Q, so its order n has
    phi(n) <= d and divides M(d). The test is gcd(p, x^M - 1) != 1, with
    x^M reduced modulo p first so M may be large.

    Args:
        p: Nonzero polynomial
        d: Degree bound, at least deg p

    Returns:
        bool: True iff some root of p is a root of unity

    Raises:
        ContractViolation: If p is zero or deg p > d
    """
    if p.is_zero():
        raise ContractViolation("The zero polynomial has every number as a root")
    if p.degree > d:
        raise ContractViolation(f"Polynomial degree {p.degree} exceeds the bound {d}")
    if p.degree == 0:
        return False
    exponent = torsion_exponent(d)
    reduced = powmod(Poly.x(), exponent, p) - Poly.constant(1)
    common = poly_gcd(p, reduced)
    return not common.is_constant()


def root_of_unity_orders(p: Poly, bound: int) -> Tuple[int, ...]:
    """Orders n in phi_bounded_orders(bound) with gcd(p, Phi_n) nonconstant."""
    if p.is_zero():
        raise ContractViolation("The zero polynomial has every number as a root")
    return tuple(n for n in phi_bounded_orders(bound) if not poly_gcd(p, cyclotomic(n)).is_constant())


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in range(2, isqrt(n) + 1):
        if n % p == 0:
            return False
    return True


def next_prime(n: int) -> int:
    """The least prime >= n."""
    candidate = max(n, 2)
    while not is_prime(candidate):
        candidate += 1
    return candidate
