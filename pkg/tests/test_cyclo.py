"""
Tests for totients, exponent sets, cyclotomic polynomials and the
root-of-unity test.
"""
import pytest
import sympy

from toralmix.engine.cyclo import (
    cyclotomic, euler_phi, has_root_of_unity_root, is_prime, next_prime, phi_bounded_orders,
    root_of_unity_orders, torsion_exponent,
)
from toralmix.errors import ContractViolation
from toralmix.exact.poly import Poly


@pytest.mark.parametrize('n, expected', [(1, 1), (2, 1), (7, 6), (12, 4), (30, 8), (97, 96)])
def test_euler_phi(n, expected):
    assert euler_phi(n) == expected


def test_euler_phi_matches_sympy():
    for n in range(1, 200):
        assert euler_phi(n) == sympy.totient(n)


def test_euler_phi_rejects_zero():
    with pytest.raises(ContractViolation):
        euler_phi(0)


def test_phi_bounded_orders():
    assert phi_bounded_orders(1).orders == (1, 2)
    assert phi_bounded_orders(2).orders == (1, 2, 3, 4, 6)
    assert phi_bounded_orders(4).orders == (1, 2, 3, 4, 5, 6, 8, 10, 12)
    assert 12 in phi_bounded_orders(4)
    assert 7 not in phi_bounded_orders(4)


def test_phi_bounded_orders_is_complete():
    # every n up to a generous bound with phi(n) <= 6 is listed
    listed = set(phi_bounded_orders(6))
    assert listed == {n for n in range(1, 500) if sympy.totient(n) <= 6}


@pytest.mark.parametrize('d, expected', [(1, 2), (2, 12), (4, 120)])
def test_torsion_exponent(d, expected):
    assert torsion_exponent(d) == expected


def test_cyclotomic_polynomials():
    assert cyclotomic(1) == Poly([-1, 1])
    assert cyclotomic(2) == Poly([1, 1])
    assert cyclotomic(4) == Poly([1, 0, 1])
    assert cyclotomic(6) == Poly([1, -1, 1])
    assert cyclotomic(12) == Poly([1, 0, -1, 0, 1])


def test_cyclotomic_matches_sympy():
    x = sympy.Symbol('x')
    for n in (5, 8, 9, 10, 15):
        expected = sympy.Poly(sympy.cyclotomic_poly(n, x), x).all_coeffs()
        assert cyclotomic(n) == Poly(int(c) for c in reversed(expected))


def test_root_of_unity_detection():
    assert has_root_of_unity_root(Poly([1, 0, 1]), 2)
    assert has_root_of_unity_root(Poly([1, 1, 1]), 2)
    assert has_root_of_unity_root(Poly([-1, 1]), 1)
    assert not has_root_of_unity_root(Poly([-1, -1, 1]), 2)
    assert not has_root_of_unity_root(Poly([-2, 0, 1]), 2)
    assert not has_root_of_unity_root(Poly([3]), 2)


def test_root_of_unity_in_a_factor():
    # (x^2 - x - 1)(x^2 + x + 1) has primitive cube roots of unity
    p = Poly([-1, -1, 1]) * Poly([1, 1, 1])
    assert has_root_of_unity_root(p, 4)


def test_root_of_unity_contract():
    with pytest.raises(ContractViolation):
        has_root_of_unity_root(Poly(), 2)
    with pytest.raises(ContractViolation):
        has_root_of_unity_root(Poly([1, 0, 0, 1]), 2)


def test_root_of_unity_orders():
    assert root_of_unity_orders(Poly([-1, 0, 0, 0, 1]), 4) == (1, 2, 4)
    assert root_of_unity_orders(Poly([-1, -1, 1]), 2) == ()


def test_primes():
    assert [n for n in range(20) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19]
    assert next_prime(14) == 17
    assert next_prime(17) == 17
    assert next_prime(0) == 2
