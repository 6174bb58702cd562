"""
Verdict Models for Toral Mix

Tagged result types returned by the decision engine and the bounded scans.
Each variant is a frozen dataclass carrying a ``kind`` tag and a ``to_dict``
method producing the report shape used on the command line, with big
integers rendered as decimal strings.
"""
from dataclasses import dataclass
from typing import ClassVar, Optional, Tuple, Union

from toralmix.exact.matrix import IntMat, IntVec

Witness = Tuple[IntVec, ...]


def _vec(v) -> list:
    return [str(x) for x in v]


def _mat(m) -> list:
    return [_vec(row) for row in m]


def format_word(word) -> str:
    """Render letters as space-separated generator indices, inverses marked with ^-1."""
    return ' '.join(f'{index}^-1' if inverted else str(index) for index, inverted in word)


@dataclass(frozen=True)
class Mixing:
    """Every exponent in ``exponents_checked`` has a zero relation kernel."""
    exponents_checked: Tuple[int, ...]
    kind: ClassVar[str] = 'Mixing'

    @property
    def is_mixing(self) -> bool:
        return True

    def to_dict(self) -> dict:
        return {'verdict': self.kind, 'exponents_checked': list(self.exponents_checked)}


@dataclass(frozen=True)
class NotMixing:
    """
    A persistent character relation: sum_k (dual T_k)^(exponent * n) witness[k] = 0
    for every n >= 1.

    Attributes:
        exponent (int): The smallest exponent l with a nonzero relation kernel
        witness (tuple): One integer character vector per map, not all zero
        support (tuple): Indices of the maps whose witness vector is nonzero
    """
    exponent: int
    witness: Witness
    support: Tuple[int, ...]
    kind: ClassVar[str] = 'NotMixing'

    @property
    def is_mixing(self) -> bool:
        return False

    def certificate(self) -> dict:
        return {
            'exponent': self.exponent,
            'witness': [_vec(x) for x in self.witness],
            'support': list(self.support),
        }

    def to_dict(self) -> dict:
        return {'verdict': self.kind, 'certificate': self.certificate()}


MixingVerdict = Union[Mixing, NotMixing]


@dataclass(frozen=True)
class QuotientWitness:
    """
    The character sublattice annihilating a closed subgroup Y with
    T_1^l = T_2^l on X/Y.
    """
    exponent: int
    sublattice: Tuple[IntVec, ...]
    kind: ClassVar[str] = 'QuotientWitness'

    def to_dict(self) -> dict:
        return {'verdict': self.kind, 'exponent': self.exponent, 'sublattice': [_vec(v) for v in self.sublattice]}


@dataclass(frozen=True)
class ProvenMixing:
    exponents_checked: Tuple[int, ...]
    kind: ClassVar[str] = 'ProvenMixing'

    def to_dict(self) -> dict:
        return {'verdict': self.kind, 'exponents_checked': list(self.exponents_checked)}


@dataclass(frozen=True)
class ProvenNotMixing:
    """
    Attributes:
        exponent (int): The exponent l at which the spectral rule fired
        subset (tuple): 0-based indices of the maps involved
        rule (str): ``equal_powers`` when two powers coincide, ``common_eigenvalue``
            when more than d maps share an eigenvalue
    """
    exponent: int
    subset: Tuple[int, ...]
    rule: str
    kind: ClassVar[str] = 'ProvenNotMixing'

    def to_dict(self) -> dict:
        return {'verdict': self.kind, 'exponent': self.exponent, 'subset': list(self.subset), 'rule': self.rule}


@dataclass(frozen=True)
class Inconclusive:
    """
    Attributes:
        reduce_to (int or None): When set, the family is mixing iff every subset
            of this size is mixing
    """
    reduce_to: Optional[int] = None
    kind: ClassVar[str] = 'Inconclusive'

    def to_dict(self) -> dict:
        return {'verdict': self.kind, 'reduce_to': self.reduce_to}


SpectralVerdict = Union[ProvenMixing, ProvenNotMixing, Inconclusive]


@dataclass(frozen=True)
class Refuted:
    """
    A group element of infinite order with a root-of-unity eigenvalue.

    Attributes:
        word (tuple): Letters (generator index, inverted) whose product is ``matrix``
        matrix (IntMat): The element
        reason (str): Why the element refutes mixing
    """
    word: Tuple[Tuple[int, bool], ...]
    matrix: IntMat
    reason: str = 'root_of_unity_eigenvalue'
    kind: ClassVar[str] = 'Refuted'

    def to_dict(self) -> dict:
        return {'verdict': self.kind, 'word': format_word(self.word), 'matrix': _mat(self.matrix), 'reason': self.reason}


@dataclass(frozen=True)
class CleanUpTo:
    """No violation among the words examined; this is not a proof of mixing."""
    max_word_length: int
    words_examined: int
    kind: ClassVar[str] = 'CleanUpTo'

    def to_dict(self) -> dict:
        return {'verdict': self.kind, 'max_word_length': self.max_word_length, 'words_examined': self.words_examined}


GroupScanReport = Union[Refuted, CleanUpTo]


@dataclass(frozen=True)
class FiniteOrbit:
    """A finite dual orbit of a nonzero character, in discovery order."""
    orbit: Tuple[IntVec, ...]
    kind: ClassVar[str] = 'FiniteOrbit'

    def to_dict(self) -> dict:
        return {'verdict': self.kind, 'size': len(self.orbit), 'orbit': [_vec(v) for v in self.orbit]}


@dataclass(frozen=True)
class ExceedsCap:
    cap: int
    kind: ClassVar[str] = 'ExceedsCap'

    def to_dict(self) -> dict:
        return {'verdict': self.kind, 'cap': self.cap}


OrbitScanReport = Union[FiniteOrbit, ExceedsCap]


@dataclass(frozen=True)
class HigherOrderWitness:
    """
    A bounded refutation of higher-order mixing.

    Attributes:
        words (tuple): The words w_1..w_s whose n-th powers were combined
        witness (tuple): Characters x_1..x_s, not all zero
        hits (tuple): The n in 1..horizon where the relation vanished exactly
        nested (bool): True for the semigroup form sum_j (w_1 ... w_j)^n x_j,
            False for the set form sum_j w_j^n x_j
    """
    words: Tuple[Tuple[Tuple[int, bool], ...], ...]
    witness: Witness
    hits: Tuple[int, ...]
    nested: bool = True
    kind: ClassVar[str] = 'HigherOrderWitness'

    def to_dict(self) -> dict:
        return {
            'verdict': self.kind,
            'words': [format_word(w) for w in self.words],
            'witness': [_vec(x) for x in self.witness],
            'hits': list(self.hits),
            'nested': self.nested,
        }
