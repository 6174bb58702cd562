"""
Trigonometric Polynomial Models for Toral Mix

Exact complex rationals, trigonometric polynomials on the torus and the
per-residue limit record produced by the correlation-limit evaluator.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, Mapping, Tuple, Union

from toralmix.errors import ContractViolation
from toralmix.exact.matrix import IntVec

Rational = Union[int, Fraction, str]


@dataclass(frozen=True)
class ComplexRational:
    """An exact complex number re + i*im with rational parts."""
    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, 're', Fraction(self.re))
        object.__setattr__(self, 'im', Fraction(self.im))

    @classmethod
    def of(cls, value) -> 'ComplexRational':
        if isinstance(value, ComplexRational):
            return value
        if isinstance(value, Mapping):
            return cls(Fraction(value.get('re', 0)), Fraction(value.get('im', 0)))
        return cls(Fraction(value))

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def __add__(self, other) -> 'ComplexRational':
        other = ComplexRational.of(other)
        return ComplexRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __mul__(self, other) -> 'ComplexRational':
        other = ComplexRational.of(other)
        return ComplexRational(self.re * other.re - self.im * other.im, self.re * other.im + self.im * other.re)

    __rmul__ = __mul__

    def __truediv__(self, scalar) -> 'ComplexRational':
        scalar = Fraction(scalar)
        return ComplexRational(self.re / scalar, self.im / scalar)

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    def to_dict(self) -> dict:
        return {'re': str(self.re), 'im': str(self.im)}

    def __str__(self) -> str:
        if self.im == 0:
            return str(self.re)
        return f'{self.re}{"+" if self.im >= 0 else "-"}{abs(self.im)}i'


ZERO = ComplexRational()
ONE = ComplexRational(Fraction(1))


@dataclass(frozen=True)
class TrigPoly:
    """
    A trigonometric polynomial sum_chi c_chi * exp(2 pi i <chi, x>) on T^dim.

    Attributes:
        dim (int): The torus dimension
        terms (dict): Character (integer tuple) to nonzero coefficient
    """
    dim: int
    terms: Dict[IntVec, ComplexRational] = field(default_factory=dict)

    def __post_init__(self):
        cleaned = {}
        for chi, coeff in self.terms.items():
            chi = tuple(int(x) for x in chi)
            if len(chi) != self.dim:
                raise ContractViolation(f"Character {chi} does not have dimension {self.dim}")
            coeff = ComplexRational.of(coeff)
            if not coeff.is_zero():
                cleaned[chi] = cleaned.get(chi, ZERO) + coeff
        object.__setattr__(self, 'terms', {k: v for k, v in sorted(cleaned.items()) if not v.is_zero()})

    @classmethod
    def character(cls, chi: Iterable[int], coeff=1) -> 'TrigPoly':
        chi = tuple(chi)
        return cls(len(chi), {chi: ComplexRational.of(coeff)})

    @classmethod
    def constant(cls, dim: int, value) -> 'TrigPoly':
        return cls(dim, {(0,) * dim: ComplexRational.of(value)})

    def coefficient(self, chi: IntVec) -> ComplexRational:
        return self.terms.get(tuple(chi), ZERO)

    def mean(self) -> ComplexRational:
        return self.coefficient((0,) * self.dim)

    def scaled(self, c) -> 'TrigPoly':
        return TrigPoly(self.dim, {k: v * c for k, v in self.terms.items()})

    def support(self) -> Tuple[IntVec, ...]:
        return tuple(self.terms)

    def to_dict(self) -> dict:
        return {'dim': self.dim, 'terms': [{'char': [str(x) for x in k], **v.to_dict()} for k, v in self.terms.items()]}


@dataclass(frozen=True)
class ProgressionLimit:
    """
    Limits of the correlation sequence along each residue class mod ``modulus``.

    Attributes:
        modulus (int): The progression step l
        values (tuple): Limit for residues 0..l-1
    """
    modulus: int
    values: Tuple[ComplexRational, ...]

    def __post_init__(self):
        if self.modulus < 1 or len(self.values) != self.modulus:
            raise ContractViolation("A progression limit needs one value per residue")

    def average(self) -> ComplexRational:
        total = ZERO
        for v in self.values:
            total = total + v
        return total / self.modulus

    def to_dict(self) -> dict:
        return {
            'modulus': self.modulus,
            'values': {str(k): v.to_dict() for k, v in enumerate(self.values)},
            'cesaro': self.average().to_dict(),
        }
