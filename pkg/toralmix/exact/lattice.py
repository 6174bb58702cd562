"""
Integer Lattices

Row-style Hermite normal form and the two lattice constructions built on it:
the saturation of a rational subspace (its intersection with Z^d) and the
completion of a primitive vector to a unimodular matrix.
"""
import logging
from fractions import Fraction
from math import gcd
from typing import List, Sequence

from toralmix.errors import ContractViolation
from toralmix.exact.matrix import IntMat, IntVec, integer_inverse, primitive, rank, rational_kernel

logger = logging.getLogger(__name__)


def hermite_normal_form(rows: Sequence[Sequence[int]]) -> List[IntVec]:
    """
    Row Hermite normal form by unimodular row operations.

    Pivots are positive, entries above a pivot are reduced into [0, pivot),
    and zero rows are moved to the bottom. All rows are returned, so the
    caller can read off which original combinations vanished.

    Args:
        rows: Integer matrix rows

    Returns:
        list: The transformed rows, same count as the input
    """
    a = [list(r) for r in rows]
    if not a:
        return []
    m, n = len(a), len(a[0])
    pivot_row = 0
    for col in range(n):
        if pivot_row == m:
            break
        while True:
            candidates = [i for i in range(pivot_row, m) if a[i][col] != 0]
            if not candidates:
                break
            smallest = min(candidates, key=lambda i: abs(a[i][col]))
            a[pivot_row], a[smallest] = a[smallest], a[pivot_row]
            reduced = True
            for i in range(pivot_row + 1, m):
                if a[i][col] != 0:
                    q = a[i][col] // a[pivot_row][col]
                    a[i] = [x - q * y for x, y in zip(a[i], a[pivot_row])]
                    if a[i][col] != 0:
                        reduced = False
            if reduced:
                break
        if a[pivot_row][col] == 0:
            continue
        if a[pivot_row][col] < 0:
            a[pivot_row] = [-x for x in a[pivot_row]]
        for i in range(pivot_row):
            q = a[i][col] // a[pivot_row][col]
            if q:
                a[i] = [x - q * y for x, y in zip(a[i], a[pivot_row])]
        pivot_row += 1
    return [tuple(r) for r in a]


def integer_kernel(constraints: Sequence[Sequence[int]], dim: int) -> List[IntVec]:
    """
    Basis in Hermite normal form of {x in Z^dim : c . x = 0 for every row c}.
    """
    if not constraints:
        return [tuple(1 if i == j else 0 for j in range(dim)) for i in range(dim)]
    width = len(constraints)
    augmented = [[c[j] for c in constraints] + [1 if i == j else 0 for i in range(dim)] for j in range(dim)]
    reduced = hermite_normal_form(augmented)
    kernel = [row[width:] for row in reduced if all(x == 0 for x in row[:width])]
    return [r for r in hermite_normal_form(kernel) if any(r)]


def lattice_saturate(basis: Sequence[Sequence[Fraction]]) -> List[IntVec]:
    """
    Integer basis of span_Q(basis) intersected with Z^d, in Hermite normal form.

    Args:
        basis: Linearly independent rational vectors of a common length d

    Returns:
        list: Integer vectors spanning the saturated lattice

    Raises:
        ContractViolation: If the input vectors are dependent or ragged

    Examples:
        >>> lattice_saturate([(Fraction(1, 2), Fraction(1, 2))])
        [(1, 1)]
    """
    if not basis:
        return []
    dim = len(basis[0])
    if any(len(v) != dim for v in basis):
        raise ContractViolation("Basis vectors must share one length")
    scaled = [primitive(v) for v in basis]
    if rank(scaled, dim) < len(scaled):
        raise ContractViolation("Basis vectors are linearly dependent")
    # span(basis) is cut out by the orthogonal complement of its row space
    complement = rational_kernel(scaled, dim)
    return integer_kernel(complement, dim)


def unimodular_completion(v: Sequence[int]) -> IntMat:
    """
    A unimodular integer matrix whose first column is the primitive vector v.

    The Hermite form of [v | I] gives a unimodular W with W v = e_1, and the
    inverse of W has v as its first column.

    Raises:
        ContractViolation: If v is zero or not primitive
    """
    d = len(v)
    common = 0
    for x in v:
        common = gcd(common, x)
    if common != 1:
        raise ContractViolation(f"Vector {tuple(v)} is not primitive")
    augmented = [[v[i]] + [1 if i == j else 0 for j in range(d)] for i in range(d)]
    reduced = hermite_normal_form(augmented)
    w = tuple(tuple(row[1:]) for row in reduced)
    completion = integer_inverse(w)
    if tuple(row[0] for row in completion) != tuple(v):
        raise ContractViolation(f"Completion of {tuple(v)} failed")
    return completion
