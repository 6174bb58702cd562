"""
Tests for exact correlation limits along arithmetic progressions.
"""
from fractions import Fraction

import pytest

from toralmix.engine.families import FIBONACCI, S, T
from toralmix.engine.limits import (
    character_limit, cesaro_limit, progression_limits, ratio_orders, spec2_exponent, trigpoly_limit,
)
from toralmix.engine.oracle import cesaro_correlation
from toralmix.errors import ContractViolation
from toralmix.exact.matrix import mat_mul
from toralmix.models.episet import EpiSet
from toralmix.models.trigpoly import ComplexRational, TrigPoly


@pytest.fixture
def flip():
    """Identity and minus identity on the circle."""
    return EpiSet.of([[[1]], [[-1]]])


def test_flip_modulus(flip):
    assert ratio_orders(flip) == (1, 2)
    assert spec2_exponent(flip) == 2


def test_rotation_ratio_orders(st_family):
    # i / omega is a primitive 12th root of unity
    assert ratio_orders(st_family) == (1, 2, 3, 12)
    assert spec2_exponent(st_family) == 12


def test_flip_character_limits(flip):
    chars = [(1,), (1,)]
    assert character_limit(flip, 2, 0, chars) == 0
    assert character_limit(flip, 2, 1, chars) == 1


def test_flip_progression_limits(flip):
    fs = [TrigPoly.character((1,)), TrigPoly.character((1,))]
    limits = progression_limits(flip, fs)
    assert limits.modulus == 2
    assert limits.values == (ComplexRational(0), ComplexRational(1))
    assert cesaro_limit(flip, fs) == ComplexRational(Fraction(1, 2))


def test_rotation_modulus(st_family):
    assert spec2_exponent(st_family) == 12


def test_rotation_limits_on_two_residues(st_family):
    # the dual orbits of e_1 under S and T meet at n = 0 and n = 1 (mod 12)
    fs = [TrigPoly.character((1, 0)), TrigPoly.character((-1, 0))]
    limits = progression_limits(st_family, fs)
    assert limits.values[0] == ComplexRational(1)
    assert limits.values[1] == ComplexRational(1)
    assert all(v.is_zero() for v in limits.values[2:])
    assert limits.average() == ComplexRational(Fraction(1, 6))


def test_mixing_pair_has_product_limit():
    family = EpiSet.of([FIBONACCI, mat_mul(FIBONACCI, FIBONACCI)])
    f = TrigPoly(2, {(0, 0): Fraction(1, 2), (1, 0): 1, (0, 1): ComplexRational(0, 3)})
    g = TrigPoly(2, {(0, 0): 3, (1, 1): 2})
    l = spec2_exponent(family)
    for residue in range(l):
        assert trigpoly_limit(family, [f, g], residue) == f.mean() * g.mean()


def test_limit_with_complex_coefficients(flip):
    f = TrigPoly(1, {(1,): ComplexRational(0, 1), (0,): 1})
    g = TrigPoly(1, {(1,): ComplexRational(0, 1)})
    # residue 1: only the pair ((1,), (1,)) survives, contributing i * i = -1
    assert trigpoly_limit(flip, [f, g], 1) == ComplexRational(-1)
    assert trigpoly_limit(flip, [f, g], 0) == ComplexRational(0)


def test_cesaro_estimate_agrees(flip):
    fs = [TrigPoly.character((1,)), TrigPoly.character((1,))]
    estimate = cesaro_correlation(flip, fs, horizon=40, grid=8)
    assert abs(estimate - complex(cesaro_limit(flip, fs))) < 1e-3


def test_cesaro_estimate_agrees_for_rotations(st_family):
    fs = [TrigPoly.character((1, 0)), TrigPoly.character((-1, 0))]
    estimate = cesaro_correlation(st_family, fs, horizon=120, grid=4)
    assert abs(estimate - complex(cesaro_limit(st_family, fs))) < 1e-3


def test_contract_checks(flip):
    with pytest.raises(ContractViolation):
        character_limit(flip, 2, 2, [(1,), (1,)])
    with pytest.raises(ContractViolation):
        character_limit(flip, 2, 0, [(1,)])
    with pytest.raises(ContractViolation):
        trigpoly_limit(flip, [TrigPoly.character((1, 0)), TrigPoly.character((1, 0))], 0)
