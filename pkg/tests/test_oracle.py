"""
Tests for the brute-force relation oracle, certificate replay, Monte Carlo
correlations and the higher-order refutation search.
"""
from fractions import Fraction

import pytest

from toralmix.engine.families import FIBONACCI, fixtures
from toralmix.engine.mixing import exponent_set, is_mixing_set
from toralmix.engine.oracle import (
    brute_force_relation_search, higher_order_refute, mc_correlation, verify_witness,
)
from toralmix.errors import ContractViolation
from toralmix.exact.matrix import mat_mul, mat_pow, mat_vec, transpose
from toralmix.models.boxes import BoxSet
from toralmix.models.episet import EpiSet
from toralmix.models.verdicts import HigherOrderWitness

A2 = mat_mul(FIBONACCI, FIBONACCI)


def _relation_hits(family, witness, horizon):
    hits = []
    for n in range(1, horizon + 1):
        total = [0] * family.dim
        for t, x in zip(family, witness):
            total = [a + b for a, b in zip(total, mat_vec(transpose(mat_pow(t, n)), x))]
        if not any(total):
            hits.append(n)
    return hits


class TestRelationSearch:
    def test_rotations_have_a_relation(self, st_family):
        witness = brute_force_relation_search(st_family, height=1, horizon=24, min_hits=2)
        assert witness is not None
        assert len(_relation_hits(st_family, witness, 24)) >= 2

    def test_fibonacci_powers_have_none(self):
        family = EpiSet.of([FIBONACCI, A2])
        assert brute_force_relation_search(family, height=3, horizon=48, min_hits=3) is None

    def test_bounds_must_be_positive(self, st_family):
        with pytest.raises(ContractViolation):
            brute_force_relation_search(st_family, height=0, horizon=10, min_hits=1)

    def test_scattered_zeros_do_not_refute_mixing(self):
        family = EpiSet.of([((-3, 0), (3, 2)), ((1, 0), (3, 2))])
        assert is_mixing_set(family).is_mixing
        # (-3)^n - 6 * 2^n + 15 has exactly three positive integer roots
        assert _relation_hits(family, ((1, 1), (3, -1)), 48) == [1, 2, 4]
        assert brute_force_relation_search(family, height=3, horizon=48, min_hits=3) is not None
        for l in exponent_set(2):
            assert brute_force_relation_search(family.powers(l), height=2, horizon=4, min_hits=4) is None

    def test_oversized_search_is_refused(self):
        cube = ((2, 1, 0), (1, 1, 0), (0, 0, 1))
        family = EpiSet.of([cube, cube, cube])
        with pytest.raises(ContractViolation, match='exceeds the limit'):
            brute_force_relation_search(family, height=10, horizon=2, min_hits=2)


class TestVerifyWitness:
    def test_engine_certificate_replays(self, st_family):
        verdict = is_mixing_set(st_family)
        assert verify_witness(st_family, verdict.exponent, verdict.witness, 50)

    def test_wrong_exponent_fails(self, st_family):
        assert not verify_witness(st_family, 1, ((1, 0), (-1, 0)), 12)

    def test_shape_and_zero_checks(self, st_family):
        with pytest.raises(ContractViolation):
            verify_witness(st_family, 12, ((0, 0), (0, 0)), 5)
        with pytest.raises(ContractViolation):
            verify_witness(st_family, 12, ((1, 0),), 5)
        with pytest.raises(ContractViolation):
            verify_witness(st_family, 0, ((1, 0), (-1, 0)), 5)


class TestMonteCarlo:
    def test_mixing_pair_factorizes(self):
        family = EpiSet.of([FIBONACCI, A2])
        box = BoxSet.cube(2, 0, Fraction(1, 2))
        estimate = mc_correlation(family, 20, [box, box], samples=100000, seed=0)
        assert estimate.within(1 / 16)

    def test_rotations_do_not_factorize(self, st_family):
        box = BoxSet.cube(2, 0, Fraction(1, 2))
        estimate = mc_correlation(st_family, 24, [box, box], samples=100000, seed=0)
        assert estimate.within(1 / 4)
        assert not estimate.within(1 / 16)

    def test_time_zero_is_box_intersection(self, st_family):
        box = BoxSet.cube(2, 0, Fraction(1, 2))
        other = BoxSet.cube(2, Fraction(1, 2), 1)
        estimate = mc_correlation(st_family, 0, [box, other], samples=5000, seed=1)
        assert estimate.hits == 0

    def test_seeded_runs_repeat(self, st_family):
        box = BoxSet.cube(2, 0, Fraction(1, 3))
        first = mc_correlation(st_family, 5, [box, box], samples=20000, seed=7, workers=2)
        second = mc_correlation(st_family, 5, [box, box], samples=20000, seed=7, workers=2)
        assert first == second

    def test_box_count_must_match(self, st_family):
        with pytest.raises(ContractViolation):
            mc_correlation(st_family, 1, [BoxSet.cube(2, 0, 1)], samples=10, seed=0)


class TestHigherOrder:
    def test_two_hits_are_not_enough_for_fibonacci(self):
        family = EpiSet.of([FIBONACCI])
        assert higher_order_refute(family, order=3, word_len=1, height=2, horizon=12, min_hits=3) is None

    def test_scaled_pair_has_no_relation(self):
        family = fixtures()['scaled_sl']
        assert higher_order_refute(family, order=3, word_len=1, height=4, horizon=12, min_hits=3) is None

    def test_sign_flip_refutes_in_group_mode(self):
        # F^n x - (-F)^n x vanishes for every even n
        negated = tuple(tuple(-x for x in row) for row in FIBONACCI)
        family = EpiSet.of([FIBONACCI, negated])
        found = higher_order_refute(family, order=2, word_len=1, height=1, horizon=12, use_inverses=True, min_hits=2)
        assert isinstance(found, HigherOrderWitness)
        assert not found.nested
        assert len(found.hits) >= 2

    def test_order_must_be_at_least_two(self):
        with pytest.raises(ContractViolation):
            higher_order_refute(EpiSet.of([FIBONACCI]), order=1, word_len=1, height=1, horizon=4)
