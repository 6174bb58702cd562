"""
Exact Univariate Polynomials

``Poly`` is a dense polynomial over the rationals, stored as a tuple of
``Fraction`` coefficients starting with the constant term and trimmed so the
leading coefficient is nonzero. The zero polynomial has no coefficients and
degree -1. Integer polynomials are the same type with integral coefficients
(see ``Poly.is_integral``).

Beyond ring arithmetic the module carries the univariate tools the decision
procedures need: monic gcd, modular powering, resultants via the Euclidean
remainder sequence, Lagrange interpolation and Sturm real-root counting.
"""
import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Sequence, Tuple, Union

from toralmix.errors import ContractViolation

logger = logging.getLogger(__name__)


@dataclass(frozen=True, init=False)
class Poly:
    """
    A polynomial with rational coefficients in ascending degree order.

    >>> Poly([1, 0, 1])
    Poly('x^2 + 1')
    """
    coeffs: Tuple[Fraction, ...]

    def __init__(self, coeffs: Iterable[Union[int, Fraction]] = ()):
        values = [Fraction(c) for c in coeffs]
        while values and values[-1] == 0:
            values.pop()
        object.__setattr__(self, 'coeffs', tuple(values))

    @classmethod
    def constant(cls, c) -> 'Poly':
        return cls([c])

    @classmethod
    def x(cls) -> 'Poly':
        return cls([0, 1])

    @classmethod
    def monomial(cls, power: int, c=1) -> 'Poly':
        return cls([0] * power + [c])

    @classmethod
    def x_pow_minus_one(cls, n: int) -> 'Poly':
        """The polynomial x^n - 1."""
        return cls([-1] + [0] * (n - 1) + [1])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lead(self) -> Fraction:
        if not self.coeffs:
            raise ContractViolation("The zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return self.degree <= 0

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def int_coeffs(self) -> Tuple[int, ...]:
        if not self.is_integral():
            raise ContractViolation(f"{self} does not have integer coefficients")
        return tuple(int(c) for c in self.coeffs)

    def monic(self) -> 'Poly':
        if self.is_zero():
            return self
        lead = self.lead
        return Poly(c / lead for c in self.coeffs)

    def __call__(self, value):
        result = 0
        for c in reversed(self.coeffs):
            result = result * value + c
        return result

    def __add__(self, other) -> 'Poly':
        other = _coerce(other)
        return Poly(a + b for a, b in itertools.zip_longest(self.coeffs, other.coeffs, fillvalue=0))

    __radd__ = __add__

    def __neg__(self) -> 'Poly':
        return Poly(-c for c in self.coeffs)

    def __sub__(self, other) -> 'Poly':
        return self + (-_coerce(other))

    def __rsub__(self, other) -> 'Poly':
        return _coerce(other) - self

    def __mul__(self, other) -> 'Poly':
        other = _coerce(other)
        if self.is_zero() or other.is_zero():
            return Poly()
        result = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                result[i + j] += a * b
        return Poly(result)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> 'Poly':
        if n < 0:
            raise ContractViolation("Cannot invert a polynomial")
        result, base = Poly.constant(1), self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __divmod__(self, divisor: 'Poly') -> Tuple['Poly', 'Poly']:
        """
        Quotient and remainder over the rationals, deg(remainder) < deg(divisor).

        >>> divmod(Poly([-1, 0, 0, 1]), Poly([-1, 1]))
        (Poly('x^2 + x + 1'), Poly('0'))
        """
        divisor = _coerce(divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("Polynomial division by zero")
        remainder = list(self.coeffs)
        quotient = [Fraction(0)] * max(len(remainder) - len(divisor.coeffs) + 1, 0)
        lead = divisor.lead
        dd = divisor.degree
        while len(remainder) - 1 >= dd and remainder:
            shift = len(remainder) - 1 - dd
            factor = remainder[-1] / lead
            quotient[shift] = factor
            for i, c in enumerate(divisor.coeffs):
                remainder[shift + i] -= factor * c
            remainder.pop()
            while remainder and remainder[-1] == 0:
                remainder.pop()
        return Poly(quotient), Poly(remainder)

    def __mod__(self, divisor: 'Poly') -> 'Poly':
        return divmod(self, divisor)[1]

    def __floordiv__(self, divisor: 'Poly') -> 'Poly':
        return divmod(self, divisor)[0]

    def exact_div(self, divisor: 'Poly') -> 'Poly':
        quotient, remainder = divmod(self, divisor)
        if not remainder.is_zero():
            raise ContractViolation(f"{self} is not divisible by {divisor}")
        return quotient

    def derivative(self) -> 'Poly':
        return Poly(i * c for i, c in enumerate(self.coeffs) if i > 0)

    def scale_argument(self, factor) -> 'Poly':
        """The polynomial p(factor * x)."""
        return Poly(c * Fraction(factor) ** i for i, c in enumerate(self.coeffs))

    def to_strings(self) -> List[str]:
        """Coefficients in ascending order as decimal or p/q strings."""
        return [str(c) for c in self.coeffs]

    def __str__(self) -> str:
        if not self.coeffs:
            return '0'
        parts = []
        for i, c in reversed(list(enumerate(self.coeffs))):
            if c == 0:
                continue
            sign = ' + ' if (c > 0 and parts) else ' - ' if (c < 0 and parts) else '' if c > 0 else '-'
            term = '' if i == 0 else 'x' if i == 1 else f'x^{i}'
            magnitude = abs(c)
            coeff = str(magnitude) if (term == '' or magnitude != 1) else ''
            parts.append(sign + coeff + term)
        return ''.join(parts)

    def __repr__(self) -> str:
        return f"Poly('{self}')"


def _coerce(value) -> Poly:
    return value if isinstance(value, Poly) else Poly.constant(value)


def poly_gcd(p: Poly, q: Poly) -> Poly:
    """
    Monic greatest common divisor over the rationals.

    Args:
        p: First polynomial
        q: Second polynomial

    Returns:
        Poly: The monic gcd; ``poly_gcd(p, 0)`` is ``p.monic()``

    Raises:
        ContractViolation: If both arguments are zero
    """
    if p.is_zero() and q.is_zero():
        raise ContractViolation("gcd of two zero polynomials is undefined")
    a, b = p, q
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def powmod(base: Poly, exponent: int, modulus: Poly) -> Poly:
    """base^exponent reduced modulo ``modulus``, by repeated squaring."""
    result = Poly.constant(1) % modulus
    base = base % modulus
    while exponent:
        if exponent & 1:
            result = (result * base) % modulus
        exponent >>= 1
        if exponent:
            base = (base * base) % modulus
    return result


def resultant(p: Poly, q: Poly) -> Fraction:
    """
    Resultant of two polynomials via the Euclidean remainder sequence.

    Uses Res(p, q) = (-1)^(deg p * deg q) * lead(q)^(deg p - deg r) * Res(q, r)
    with r = p mod q.
    """
    if p.is_zero() or q.is_zero():
        return Fraction(0)
    m, n = p.degree, q.degree
    if n == 0:
        return q.lead ** m
    if m == 0:
        return p.lead ** n
    r = p % q
    if r.is_zero():
        return Fraction(0)
    sign = -1 if (m * n) % 2 else 1
    return sign * q.lead ** (m - r.degree) * resultant(q, r)


def interpolate(points: Sequence[Tuple[Fraction, Fraction]]) -> Poly:
    """Lagrange interpolation through distinct abscissae."""
    result = Poly()
    for i, (xi, yi) in enumerate(points):
        if yi == 0:
            continue
        basis = Poly.constant(1)
        denominator = Fraction(1)
        for j, (xj, _) in enumerate(points):
            if j == i:
                continue
            basis = basis * Poly([-xj, 1])
            denominator *= xi - xj
        result = result + basis * (Fraction(yi) / denominator)
    return result


def ratio_polynomial(p: Poly, q: Poly) -> Poly:
    """
    The polynomial Res_y(p(y), q(x*y)) in x, whose roots are the quotients
    mu/lambda with p(lambda) = 0 and q(mu) = 0 (all roots of p nonzero).

    Computed by evaluating the resultant at deg p * deg q + 1 integer points
    and interpolating.
    """
    bound = p.degree * q.degree
    points = []
    for x0 in range(1, bound + 2):
        points.append((Fraction(x0), resultant(p, q.scale_argument(x0))))
    return interpolate(points)


def sturm_sequence(p: Poly) -> List[Poly]:
    sequence = [p, p.derivative()]
    while not sequence[-1].is_zero():
        remainder = sequence[-2] % sequence[-1]
        sequence.append(-remainder)
    return [s for s in sequence if not s.is_zero()]


def count_real_roots(p: Poly) -> int:
    """
    Number of distinct real roots of a nonzero polynomial, from the sign
    changes of its Sturm sequence at minus and plus infinity.
    """
    if p.is_zero():
        raise ContractViolation("The zero polynomial has infinitely many roots")
    sequence = sturm_sequence(p)

    def changes(signs: List[int]) -> int:
        signs = [s for s in signs if s != 0]
        return sum(1 for a, b in zip(signs, signs[1:]) if a != b)

    at_plus = [1 if s.lead > 0 else -1 for s in sequence]
    at_minus = [(1 if s.lead > 0 else -1) * (-1) ** s.degree for s in sequence]
    return changes(at_minus) - changes(at_plus)
