"""
Epimorphism Set Model for Toral Mix

An ``EpiSet`` is the ordered finite family {T_1, ..., T_s} of integer matrices
acting on the d-dimensional torus. Construction validates the family once
(square, common dimension, nonzero determinants) so that every engine
operation can rely on those invariants without re-checking them.

The dual of a map acting on characters Z^d is its transpose; ``duals`` and
``dual_powers`` expose that convention in one place.
"""
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence, Tuple

from toralmix.errors import ContractViolation
from toralmix.exact.matrix import IntMat, as_int_matrix, det, mat_pow, transpose


@dataclass(frozen=True)
class EpiSet:
    """
    Ordered family of epimorphisms of the torus T^dim.

    Attributes:
        dim (int): The torus dimension d
        maps (tuple): The matrices T_1..T_s, each d x d with nonzero determinant
    """
    dim: int
    maps: Tuple[IntMat, ...]

    def __post_init__(self):
        if self.dim < 1:
            raise ContractViolation(f"Dimension must be positive, got {self.dim}")
        if not self.maps:
            raise ContractViolation("An epimorphism set needs at least one map")
        for index, m in enumerate(self.maps):
            if len(m) != self.dim or any(len(row) != self.dim for row in m):
                raise ContractViolation(f"Map {index} does not have dimension {self.dim}")
            if det(m) == 0:
                raise ContractViolation(f"Map {index} has determinant 0 and is not an epimorphism")

    @classmethod
    def of(cls, matrices: Iterable[Sequence[Sequence[object]]], dim: int = None) -> 'EpiSet':
        """
        Build an EpiSet from nested sequences of ints or decimal strings.

        Args:
            matrices: The maps in order
            dim: Expected dimension; inferred from the first map when omitted

        Returns:
            EpiSet: The validated family
        """
        frozen = [as_int_matrix(m) for m in matrices]
        if not frozen:
            raise ContractViolation("An epimorphism set needs at least one map")
        expected = dim if dim is not None else len(frozen[0])
        for index, m in enumerate(frozen):
            if len(m) != expected:
                raise ContractViolation(f"Map {index} has dimension {len(m)}, expected {expected}")
        return cls(expected, tuple(frozen))

    def __len__(self) -> int:
        return len(self.maps)

    def __iter__(self) -> Iterator[IntMat]:
        return iter(self.maps)

    def __getitem__(self, index: int) -> IntMat:
        return self.maps[index]

    @property
    def size(self) -> int:
        return len(self.maps)

    def subset(self, indices: Iterable[int]) -> 'EpiSet':
        return EpiSet(self.dim, tuple(self.maps[i] for i in indices))

    def duals(self) -> Tuple[IntMat, ...]:
        return tuple(transpose(m) for m in self.maps)

    def dual_powers(self, l: int) -> Tuple[IntMat, ...]:
        return tuple(mat_pow(transpose(m), l) for m in self.maps)

    def powers(self, l: int) -> 'EpiSet':
        return EpiSet(self.dim, tuple(mat_pow(m, l) for m in self.maps))

    def to_dict(self) -> dict:
        return {
            'dim': self.dim,
            'matrices': [[[str(x) for x in row] for row in m] for m in self.maps],
        }
