"""
Tests for the exact arithmetic kernel: matrices, polynomials and lattices.
"""
from fractions import Fraction

import pytest
import sympy

from toralmix.errors import ContractViolation
from toralmix.exact.lattice import hermite_normal_form, integer_kernel, lattice_saturate, unimodular_completion
from toralmix.exact.matrix import (
    as_int_matrix, charpoly, det, identity, integer_inverse, inverse, mat_mul, mat_pow, mat_vec, primitive,
    rank, rational_kernel, transpose,
)
from toralmix.exact.poly import (
    Poly, count_real_roots, interpolate, poly_gcd, powmod, ratio_polynomial, resultant,
)

S = ((0, -1), (1, 0))
T = ((0, -1), (1, -1))


class TestMatrices:
    def test_as_int_matrix_parses_decimal_strings(self):
        assert as_int_matrix([["1", "-2"], ["3", " 4 "]]) == ((1, -2), (3, 4))

    def test_as_int_matrix_keeps_big_integers(self):
        big = str(2 ** 100)
        assert as_int_matrix([[big]]) == ((2 ** 100,),)

    @pytest.mark.parametrize('rows', [
        [[1, 2]],
        [[1, 2], [3]],
        [[1.0, 0], [0, 1]],
        [[True, 0], [0, 1]],
        [["1x", 0], [0, 1]],
        [],
    ])
    def test_as_int_matrix_rejects_bad_input(self, rows):
        with pytest.raises(ContractViolation):
            as_int_matrix(rows)

    def test_as_int_matrix_checks_dimension(self):
        with pytest.raises(ContractViolation):
            as_int_matrix([[1]], dim=2)

    def test_determinant(self):
        assert det(((2, 1), (1, 1))) == 1
        assert det(((0, 1), (1, 0))) == -1
        assert det(((2, 0, 1), (1, 3, 2), (1, 1, 2))) == 6
        assert det(((1, 2), (2, 4))) == 0

    def test_determinant_matches_sympy(self):
        m = ((3, -1, 4, 1), (5, 9, -2, 6), (5, 3, 5, -8), (9, 7, 9, 3))
        assert det(m) == sympy.Matrix(m).det()

    def test_powers_of_rotations(self):
        assert mat_pow(S, 4) == identity(2)
        assert mat_pow(T, 3) == identity(2)
        assert mat_pow(S, 0) == identity(2)

    def test_negative_power_rejected(self):
        with pytest.raises(ContractViolation):
            mat_pow(S, -1)

    def test_inverse(self):
        assert inverse(((2, 1), (1, 1))) == ((1, -1), (-1, 2))
        assert inverse(((2, 0), (0, 4))) == ((Fraction(1, 2), 0), (0, Fraction(1, 4)))
        with pytest.raises(ContractViolation):
            inverse(((1, 2), (2, 4)))

    def test_integer_inverse(self):
        assert integer_inverse(T) == mat_pow(T, 2)
        with pytest.raises(ContractViolation):
            integer_inverse(((2, 0), (0, 1)))

    def test_rank_and_kernel(self):
        assert rank(((1, 2), (2, 4))) == 1
        assert rational_kernel(((1, 1),)) == [(1, -1)]
        assert rational_kernel(((1, 0), (0, 1))) == []
        assert rational_kernel((), columns=2) == [(1, 0), (0, 1)]

    def test_kernel_vectors_are_annihilated(self):
        m = ((1, 2, 3, 4), (2, 4, 6, 9))
        kernel = rational_kernel(m)
        assert len(kernel) == 2
        for v in kernel:
            assert mat_vec(m, v) == (0, 0)

    def test_primitive(self):
        assert primitive([Fraction(-1, 2), Fraction(1, 3)]) == (3, -2)
        assert primitive([0, -4, 6]) == (0, 2, -3)
        assert primitive([0, 0]) == (0, 0)

    def test_charpoly(self):
        assert charpoly(S) == Poly([1, 0, 1])
        assert charpoly(T) == Poly([1, 1, 1])
        assert charpoly(((1, 1), (1, 0))) == Poly([-1, -1, 1])

    def test_charpoly_matches_sympy(self):
        m = ((2, -1, 0, 3), (1, 4, 1, -2), (0, 5, -3, 1), (7, 0, 2, 2))
        x = sympy.Symbol('x')
        expected = sympy.Poly(sympy.Matrix(m).charpoly(x).as_expr(), x).all_coeffs()
        assert list(charpoly(m).coeffs) == [Fraction(int(c)) for c in reversed(expected)]

    def test_transpose(self):
        assert transpose(((1, 2), (3, 4))) == ((1, 3), (2, 4))
        assert mat_mul(S, transpose(S)) == identity(2)


class TestPolynomials:
    def test_string_form(self):
        assert str(Poly([1, 0, 1])) == 'x^2 + 1'
        assert str(Poly([-1, 0, 2])) == '2x^2 - 1'
        assert str(Poly()) == '0'
        assert repr(Poly([0, 1])) == "Poly('x')"

    def test_trailing_zeros_dropped(self):
        assert Poly([1, 2, 0, 0]).degree == 1
        assert Poly([0]).is_zero()

    def test_division(self):
        quotient, remainder = divmod(Poly([-1, 0, 1]), Poly([-1, 1]))
        assert quotient == Poly([1, 1])
        assert remainder.is_zero()
        assert Poly([1, 0, 1]) % Poly([-1, 1]) == Poly([2])

    def test_gcd_is_monic(self):
        assert poly_gcd(Poly([-1, 0, 1]), Poly([2, -3, 1])) == Poly([-1, 1])
        assert poly_gcd(Poly([2, 4]), Poly()) == Poly([Fraction(1, 2), 1])
        with pytest.raises(ContractViolation):
            poly_gcd(Poly(), Poly())

    def test_powmod(self):
        # x^4 = 1 modulo x^2 + 1
        assert powmod(Poly.x(), 4, Poly([1, 0, 1])) == Poly([1])
        assert powmod(Poly.x(), 3, Poly([1, 0, 1])) == Poly([0, -1])

    def test_resultant(self):
        assert resultant(Poly([1, 0, 1]), Poly([-1, 1])) == 2
        assert resultant(Poly([-1, 0, 1]), Poly([-1, 1])) == 0

    def test_resultant_matches_sympy(self):
        x = sympy.Symbol('x')
        p, q = Poly([3, -2, 0, 1]), Poly([-5, 1, 2])
        expected = sympy.resultant(x ** 3 - 2 * x + 3, 2 * x ** 2 + x - 5, x)
        assert resultant(p, q) == int(expected)

    def test_ratio_polynomial_roots_are_quotients(self):
        ratios = ratio_polynomial(Poly([-2, 1]), Poly([-6, 1]))
        assert ratios.degree == 1
        assert ratios(3) == 0

    def test_ratio_polynomial_of_rotation_has_unit_root(self):
        # i / i = 1 is a ratio of two eigenvalues of S
        ratios = ratio_polynomial(charpoly(S), charpoly(S))
        assert ratios(1) == 0
        assert ratios(-1) == 0

    def test_interpolate(self):
        assert interpolate([(0, 1), (1, 2), (2, 5)]) == Poly([1, 0, 1])

    def test_count_real_roots(self):
        assert count_real_roots(Poly([-2, 0, 1])) == 2
        assert count_real_roots(Poly([1, 0, 1])) == 0
        assert count_real_roots(Poly([0, -1, 0, 1])) == 3
        with pytest.raises(ContractViolation):
            count_real_roots(Poly())


class TestLattices:
    def test_hermite_normal_form(self):
        assert hermite_normal_form([[2, 4], [1, 3]]) == [(1, 1), (0, 2)]

    def test_saturation_of_half_diagonal(self):
        assert lattice_saturate([(Fraction(1, 2), Fraction(1, 2))]) == [(1, 1)]

    def test_saturation_rejects_dependent_basis(self):
        with pytest.raises(ContractViolation):
            lattice_saturate([(1, 2), (2, 4)])

    def test_integer_kernel(self):
        kernel = integer_kernel([[1, 1, 1]], 3)
        assert len(kernel) == 2
        for v in kernel:
            assert sum(v) == 0

    def test_unimodular_completion(self):
        completion = unimodular_completion((2, 3))
        assert tuple(row[0] for row in completion) == (2, 3)
        assert det(completion) in (1, -1)

    def test_completion_needs_primitive_vector(self):
        with pytest.raises(ContractViolation):
            unimodular_completion((2, 4))
