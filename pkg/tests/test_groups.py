"""
Tests for the bounded group scans and word enumeration.
"""
import pytest

from toralmix.engine.families import FIBONACCI, S, T, fixtures, lorentz_generators
from toralmix.engine.groups import (
    conjugate_family, dual_orbit_scan, enumerate_words, group_mixing_scan, is_finite_order, word_matrix,
)
from toralmix.errors import ContractViolation
from toralmix.exact.matrix import charpoly, identity, mat_mul
from toralmix.models.episet import EpiSet
from toralmix.models.verdicts import CleanUpTo, ExceedsCap, FiniteOrbit, Refuted

UNIPOTENT = ((1, 1), (0, 1))


def test_finite_order():
    assert is_finite_order(S)
    assert is_finite_order(T)
    assert not is_finite_order(FIBONACCI)
    assert not is_finite_order(UNIPOTENT)
    assert not is_finite_order(((2, 0), (0, 1)))
    with pytest.raises(ContractViolation):
        is_finite_order(((1, 2), (2, 4)))


def test_words_are_deduplicated():
    words = list(enumerate_words(EpiSet.of([S]), 6))
    # S, S^2, S^3 are new; S^4 is the identity
    assert [w for w, _ in words] == [((0, False),), ((0, False),) * 2, ((0, False),) * 3]


def test_words_are_freely_reduced():
    words = [w for w, _ in enumerate_words(EpiSet.of([FIBONACCI]), 3, use_inverses=True)]
    assert ((0, False), (0, True)) not in words
    assert words[:2] == [((0, False),), ((0, True),)]


def test_word_matrix_replays_enumeration():
    family = EpiSet.of([FIBONACCI, UNIPOTENT])
    for word, matrix in enumerate_words(family, 3, use_inverses=True):
        assert word_matrix(family, word) == matrix


def test_inverses_need_unimodular_generators():
    with pytest.raises(ContractViolation):
        list(enumerate_words(EpiSet.of([((2, 0), (0, 1))]), 2, use_inverses=True))


def test_unipotent_generator_refuted_at_length_one():
    verdict = group_mixing_scan(EpiSet.of([UNIPOTENT]), 4)
    assert isinstance(verdict, Refuted)
    assert verdict.word == ((0, False),)
    assert verdict.matrix == UNIPOTENT


def test_fibonacci_clean_to_length_eight():
    verdict = group_mixing_scan(EpiSet.of([FIBONACCI]), 8, use_inverses=True)
    assert isinstance(verdict, CleanUpTo)
    assert verdict.max_word_length == 8
    assert verdict.words_examined == 16


def test_lorentz_fixture_refuted():
    family = fixtures()['not_erg']
    verdict = group_mixing_scan(family, 2)
    assert isinstance(verdict, Refuted)
    # every Lorentz matrix of infinite order has eigenvalue 1
    for word, matrix in enumerate_words(family, 2):
        if not is_finite_order(matrix):
            assert charpoly(matrix)(1) == 0


def test_lorentz_generators_preserve_the_form():
    form = ((1, 0, 0), (0, 1, 0), (0, 0, -1))
    for b in lorentz_generators(3, 2):
        transposed = tuple(zip(*b))
        assert mat_mul(mat_mul(transposed, form), b) == form


def test_orbit_scan_finds_fixed_character():
    family = fixtures()['not_irr']
    first = EpiSet.of([family[0], family[1]])
    verdict = dual_orbit_scan(first, (0, 0, 1), 100)
    assert verdict == FiniteOrbit(((0, 0, 1),))


def test_orbit_scan_exceeds_cap():
    verdict = dual_orbit_scan(EpiSet.of([FIBONACCI]), (1, 0), 50)
    assert verdict == ExceedsCap(50)


def test_orbit_of_rotation_is_finite():
    verdict = dual_orbit_scan(EpiSet.of([S]), (1, 0), 10)
    assert isinstance(verdict, FiniteOrbit)
    assert len(verdict.orbit) == 4


def test_orbit_scan_contract():
    with pytest.raises(ContractViolation):
        dual_orbit_scan(EpiSet.of([S]), (0, 0), 10)
    with pytest.raises(ContractViolation):
        dual_orbit_scan(EpiSet.of([S]), (1, 0, 0), 10)


def test_conjugate_family_shares_charpoly():
    gamma, delta = ((1, 2), (0, 1)), ((1, 0), (2, 1))
    family = conjugate_family(gamma, delta, 3)
    assert family.size == 3
    assert {charpoly(t) for t in family} == {charpoly(gamma)}
    assert family[0] != gamma


def test_conjugate_family_needs_unimodular_delta():
    with pytest.raises(ContractViolation):
        conjugate_family(((1, 2), (0, 1)), ((2, 0), (0, 1)), 2)


def test_identity_is_never_a_word():
    family = EpiSet.of([S, T])
    assert identity(2) not in {m for _, m in enumerate_words(family, 5, use_inverses=True)}
