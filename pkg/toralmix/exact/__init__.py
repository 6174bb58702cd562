"""
Exact arithmetic kernel: integer/rational matrices, rational polynomials and
integer lattices. Nothing in this package uses floating point.
"""
from toralmix.exact.poly import Poly, count_real_roots, interpolate, poly_gcd, powmod, ratio_polynomial, resultant
from toralmix.exact.matrix import (
    IntMat, IntVec, RatMat, RatVec, as_int_matrix, charpoly, det, identity, integer_inverse, inverse,
    is_unimodular, mat_add, mat_mul, mat_pow, mat_scale, mat_sub, mat_vec, primitive,
    rank, rational_kernel, rref, transpose, zeros,
)
from toralmix.exact.lattice import hermite_normal_form, integer_kernel, lattice_saturate, unimodular_completion
