"""
Exact Matrix Arithmetic

Square and rectangular matrices are plain tuples of row tuples holding Python
integers or ``fractions.Fraction`` values, so every value is immutable and
hashable and no intermediate result can overflow. Rationals are always kept in
lowest terms by ``Fraction`` itself, which makes equality structural.

The module provides:
- construction and validation of integer matrices (``as_int_matrix``)
- ring operations, powering, transpose, determinant (Bareiss) and inverse
- the characteristic polynomial via the division-free Berkowitz recurrence
- reduced row echelon form and canonical rational kernels
"""
import logging
from fractions import Fraction
from math import gcd
from typing import Iterable, List, Sequence, Tuple, Union

from toralmix.errors import ContractViolation
from toralmix.exact.poly import Poly

logger = logging.getLogger(__name__)

Number = Union[int, Fraction]
IntVec = Tuple[int, ...]
IntMat = Tuple[IntVec, ...]
RatVec = Tuple[Fraction, ...]
RatMat = Tuple[RatVec, ...]


def as_int_matrix(rows: Iterable[Iterable[object]], dim: int = None) -> IntMat:
    """
    Validate and freeze a square integer matrix.

    Entries may be Python ints or decimal strings (the wire format for big
    integers). Booleans and floats are refused.

    Args:
        rows: Row-major entries
        dim: Expected dimension, checked when given

    Returns:
        IntMat: The matrix as a tuple of int tuples

    Raises:
        ContractViolation: If the matrix is empty, ragged, not square, has the
            wrong dimension or holds a non-integer entry
    """
    frozen = []
    for row in rows:
        parsed = []
        for entry in row:
            if isinstance(entry, bool) or not isinstance(entry, (int, str)):
                raise ContractViolation(f"Matrix entry {entry!r} is not an integer")
            if isinstance(entry, str):
                try:
                    entry = int(entry.strip(), 10)
                except ValueError:
                    raise ContractViolation(f"Matrix entry {entry!r} is not a decimal integer")
            parsed.append(entry)
        frozen.append(tuple(parsed))
    size = len(frozen)
    if size == 0:
        raise ContractViolation("Matrix must have at least one row")
    if any(len(row) != size for row in frozen):
        raise ContractViolation(f"Matrix must be square, got rows of lengths {[len(r) for r in frozen]}")
    if dim is not None and size != dim:
        raise ContractViolation(f"Matrix has dimension {size}, expected {dim}")
    return tuple(frozen)


def identity(d: int) -> IntMat:
    return tuple(tuple(1 if i == j else 0 for j in range(d)) for i in range(d))


def zeros(rows: int, cols: int) -> IntMat:
    return tuple((0,) * cols for _ in range(rows))


def transpose(m: Sequence[Sequence[Number]]) -> tuple:
    return tuple(zip(*m)) if m else ()


def mat_mul(a: Sequence[Sequence[Number]], b: Sequence[Sequence[Number]]) -> tuple:
    columns = list(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in columns) for row in a)


def mat_vec(m: Sequence[Sequence[Number]], v: Sequence[Number]) -> tuple:
    return tuple(sum(x * y for x, y in zip(row, v)) for row in m)


def mat_add(a, b) -> tuple:
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_sub(a, b) -> tuple:
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_scale(m, c: Number) -> tuple:
    return tuple(tuple(c * x for x in row) for row in m)


def mat_pow(m: Sequence[Sequence[Number]], n: int) -> tuple:
    """Raise a square matrix to a non-negative power by repeated squaring."""
    if n < 0:
        raise ContractViolation("Negative powers require an explicit inverse")
    result = identity(len(m))
    base = tuple(tuple(row) for row in m)
    while n:
        if n & 1:
            result = mat_mul(result, base)
        n >>= 1
        if n:
            base = mat_mul(base, base)
    return result


def det(m: Sequence[Sequence[int]]) -> int:
    """
    Determinant of an integer matrix with Bareiss fraction-free elimination.

    Every division in the recurrence is exact, so the intermediate values stay
    integers bounded by minors of the input.
    """
    n = len(m)
    if n == 0:
        return 1
    a = [list(row) for row in m]
    if any(isinstance(x, Fraction) for row in a for x in row):
        return _rational_det(a)
    sign, previous = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // previous
        previous = a[k][k]
    return sign * a[n - 1][n - 1]


def _rational_det(a: List[List[Number]]) -> Fraction:
    work = [[Fraction(x) for x in row] for row in a]
    n = len(work)
    result = Fraction(1)
    for c in range(n):
        pivot = next((i for i in range(c, n) if work[i][c] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != c:
            work[c], work[pivot] = work[pivot], work[c]
            result = -result
        result *= work[c][c]
        for i in range(c + 1, n):
            factor = work[i][c] / work[c][c]
            work[i] = [x - factor * y for x, y in zip(work[i], work[c])]
    return result


def is_unimodular(m: Sequence[Sequence[int]]) -> bool:
    return det(m) in (1, -1)


def rref(m: Sequence[Sequence[Number]], columns: int = None) -> Tuple[Tuple[RatVec, ...], Tuple[int, ...]]:
    """
    Reduced row echelon form over the rationals.

    Args:
        m: Matrix rows (any shape); may be empty when ``columns`` is given
        columns: Column count, required for an empty matrix

    Returns:
        tuple: (nonzero rows of the reduced form, pivot column indices)
    """
    rows = [[Fraction(x) for x in row] for row in m]
    ncols = columns if columns is not None else (len(rows[0]) if rows else 0)
    pivots = []
    r = 0
    for c in range(ncols):
        if r == len(rows):
            break
        pivot = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        lead = rows[r][c]
        if lead != 1:
            rows[r] = [x / lead for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                factor = rows[i][c]
                rows[i] = [x - factor * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    return tuple(tuple(row) for row in rows[:r]), tuple(pivots)


def rank(m: Sequence[Sequence[Number]], columns: int = None) -> int:
    return len(rref(m, columns)[1])


def primitive(v: Sequence[Number]) -> IntVec:
    """
    Scale a nonzero rational vector to coprime integers with a positive first
    nonzero entry. The zero vector is returned unchanged as integers.
    """
    fractions = [Fraction(x) for x in v]
    denominator = 1
    for x in fractions:
        denominator = denominator * x.denominator // gcd(denominator, x.denominator)
    ints = [int(x * denominator) for x in fractions]
    common = 0
    for x in ints:
        common = gcd(common, x)
    if common == 0:
        return tuple(ints)
    ints = [x // common for x in ints]
    lead = next(x for x in ints if x != 0)
    if lead < 0:
        ints = [-x for x in ints]
    return tuple(ints)


def rational_kernel(m: Sequence[Sequence[Number]], columns: int = None) -> List[IntVec]:
    """
    Basis of the right null space of ``m`` over the rationals.

    Each basis vector has a 1 in one free column and zeros in the other free
    columns before scaling; vectors are listed by ascending free column and
    scaled with ``primitive``. The result is deterministic for a fixed input.

    Args:
        m: Matrix rows
        columns: Column count, required when ``m`` has no rows

    Returns:
        list: Primitive integer basis vectors, empty for an injective matrix
    """
    ncols = columns if columns is not None else (len(m[0]) if m else 0)
    rows, pivots = rref(m, ncols)
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        vector = [Fraction(0)] * ncols
        vector[free] = Fraction(1)
        for row, pivot in zip(rows, pivots):
            vector[pivot] = -row[free]
        basis.append(primitive(vector))
    return basis


def inverse(m: Sequence[Sequence[Number]]) -> RatMat:
    """
    Inverse over the rationals by Gauss-Jordan elimination.

    Raises:
        ContractViolation: If the matrix is singular
    """
    n = len(m)
    augmented = [list(row) + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(m)]
    rows, pivots = rref(augmented, 2 * n)
    if pivots[:n] != tuple(range(n)):
        raise ContractViolation("Matrix is singular")
    return tuple(tuple(row[n:]) for row in rows)


def integer_inverse(m: Sequence[Sequence[int]]) -> IntMat:
    """
    Inverse of a unimodular integer matrix, as an integer matrix.

    Raises:
        ContractViolation: If the determinant is not +1 or -1
    """
    if not is_unimodular(m):
        raise ContractViolation(f"Matrix with determinant {det(m)} has no integer inverse")
    return tuple(tuple(int(x) for x in row) for row in inverse(m))


def charpoly(m: Sequence[Sequence[Number]]) -> Poly:
    """
    Characteristic polynomial det(xI - m) by the Berkowitz algorithm.

    The recurrence only adds and multiplies entries, so integer input yields
    integer coefficients without any division, and rational input is handled
    by the same code.

    Args:
        m: Square matrix

    Returns:
        Poly: Monic polynomial of degree ``len(m)``

    Examples:
        >>> charpoly(((0, -1), (1, 0)))
        Poly('x^2 + 1')
    """
    n = len(m)
    if n == 0:
        return Poly.constant(1)
    # Coefficients in descending order of the leading principal minor's polynomial
    vect = [1, -m[0][0]]
    for k in range(1, n):
        row = m[k][:k]
        column = [m[i][k] for i in range(k)]
        sub = [r[:k] for r in m[:k]]
        items = [sum(x * y for x, y in zip(row, column))]
        walk = column
        for _ in range(k - 1):
            walk = [sum(x * y for x, y in zip(r, walk)) for r in sub]
            items.append(sum(x * y for x, y in zip(row, walk)))
        toeplitz = [1, -m[k][k]] + [-x for x in items]
        vect = [sum(toeplitz[i - j] * vect[j] for j in range(min(i, k) + 1)) for i in range(k + 2)]
    return Poly(reversed(vect))
