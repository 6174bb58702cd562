"""
Box Model for Toral Mix

A ``BoxSet`` is a product of half-open rational intervals [a_i, b_i) inside
the unit cube, standing for a measurable set B on the torus.
"""
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Tuple

from toralmix.errors import ContractViolation


@dataclass(frozen=True)
class BoxSet:
    intervals: Tuple[Tuple[Fraction, Fraction], ...]

    def __post_init__(self):
        frozen = []
        for a, b in self.intervals:
            a, b = Fraction(a), Fraction(b)
            if not (0 <= a < b <= 1):
                raise ContractViolation(f"Interval [{a}, {b}) is not inside [0, 1)")
            frozen.append((a, b))
        if not frozen:
            raise ContractViolation("A box needs at least one interval")
        object.__setattr__(self, 'intervals', tuple(frozen))

    @classmethod
    def cube(cls, dim: int, a, b) -> 'BoxSet':
        return cls(tuple((Fraction(a), Fraction(b)) for _ in range(dim)))

    @classmethod
    def of(cls, pairs: Iterable[Iterable[object]]) -> 'BoxSet':
        return cls(tuple((Fraction(str(a)), Fraction(str(b))) for a, b in pairs))

    @property
    def dim(self) -> int:
        return len(self.intervals)

    @property
    def measure(self) -> Fraction:
        result = Fraction(1)
        for a, b in self.intervals:
            result *= b - a
        return result

    def to_dict(self) -> dict:
        return {'intervals': [[str(a), str(b)] for a, b in self.intervals]}


@dataclass(frozen=True)
class MCEstimate:
    """
    Attributes:
        estimate (float): Fraction of samples inside every pulled-back box
        stderr (float): Binomial standard error of the estimate
        samples (int): Number of points drawn
        hits (int): Number of points counted
    """
    estimate: float
    stderr: float
    samples: int
    hits: int

    def within(self, target: float, sigmas: float = 3.0) -> bool:
        return abs(self.estimate - target) <= sigmas * max(self.stderr, 1e-12)

    def to_dict(self) -> dict:
        return {'estimate': self.estimate, 'stderr': self.stderr, 'samples': self.samples, 'hits': self.hits}
