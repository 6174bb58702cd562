"""
Family Models for Toral Mix

Parameter records for the counterexample constructions and the certified
Eisenstein polynomial returned by the polynomial generator.
"""
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Optional

from toralmix.errors import ContractViolation
from toralmix.exact.poly import Poly


class FamilyKind(str, Enum):
    """Constructions available through ``gen-example``."""
    UNIPOTENT_SHARP = 'unipotent'
    EISENSTEIN_POLY = 'eisenstein'
    EPI_SHARP = 'epi'
    BLOCK_TRIANGULAR = 'block'
    SCALED_SL = 'scaled-sl'
    ROTATIONS_ST = 'st'
    CONJUGATE = 'conjugate'
    LORENTZ = 'lorentz'

    @classmethod
    def parse(cls, value: str) -> 'FamilyKind':
        try:
            return cls(value)
        except ValueError:
            names = ', '.join(k.value for k in cls)
            raise ContractViolation(f"Unknown family kind {value!r}; expected one of {names}")


@dataclass(frozen=True)
class FamilySpec:
    """
    A construction request.

    Attributes:
        kind (FamilyKind): Which construction to run
        d (int): Torus dimension (or first block size for ``block``)
        s (int): Family size where applicable
        q (int): Prime for the Eisenstein polynomial, chosen automatically when None
        extra (dict): Further integer parameters (``d2`` for ``block``, ``count`` ...)
    """
    kind: FamilyKind
    d: int = 2
    s: Optional[int] = None
    q: Optional[int] = None
    extra: Dict[str, int] = field(default_factory=dict)

    def __post_init__(self):
        if self.d < 1:
            raise ContractViolation(f"Dimension must be positive, got {self.d}")
        if self.kind in (FamilyKind.UNIPOTENT_SHARP, FamilyKind.EPI_SHARP) and self.s is not None:
            if not 2 <= self.s <= self.d + 1:
                raise ContractViolation(f"Family size must satisfy 2 <= s <= d + 1, got s={self.s}, d={self.d}")


@dataclass(frozen=True)
class EisensteinPoly:
    """
    Attributes:
        q (int): The prime used
        poly (Poly): (x - q)(x - 2q)...(x - dq) + q
        real_roots (int): Sturm count of distinct real roots
        degenerate (bool): True for d = 1, where the polynomial is x
    """
    q: int
    poly: Poly
    real_roots: int
    degenerate: bool = False

    def to_dict(self) -> dict:
        return {
            'q': self.q,
            'poly': str(self.poly),
            'coefficients': self.poly.to_strings(),
            'real_roots': self.real_roots,
            'degenerate': self.degenerate,
        }
