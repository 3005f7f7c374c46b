"""
Subspaces in Canonical Form

A subspace of k^n is stored as its reduced row echelon basis, which makes
equality of spans a structural comparison.
"""

from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple

from errors import AmbientMismatchError
from exactlin.field import QQ, Field, Scalar
from exactlin.matrix import Matrix, Vector, rref_rows


class Subspace:
    """Subspace of field^ambient with a reduced echelon basis."""

    __slots__ = ("field", "ambient", "basis", "pivots")

    def __init__(self, ambient: int, vectors: Iterable[Sequence[Scalar]] = (), field: Field = QQ):
        self.field = field
        self.ambient = ambient
        rows = []
        for v in vectors:
            if len(v) != ambient:
                raise AmbientMismatchError(f"vector of length {len(v)} in ambient dimension {ambient}")
            rows.append([field(x) for x in v])
        reduced, pivots = rref_rows(rows, ambient, field)
        self.basis: Tuple[Vector, ...] = tuple(tuple(r) for r in reduced[:len(pivots)])
        self.pivots: Tuple[int, ...] = tuple(pivots)

    @classmethod
    def zero(cls, ambient: int, field: Field = QQ) -> "Subspace":
        return cls(ambient, (), field)

    @classmethod
    def full(cls, ambient: int, field: Field = QQ) -> "Subspace":
        return cls(ambient, Matrix.identity(ambient, field).rows, field)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def _check(self, other: "Subspace") -> None:
        if self.ambient != other.ambient:
            raise AmbientMismatchError(f"ambient dimensions differ: {self.ambient} vs {other.ambient}")

    def reduce(self, vector: Sequence[Scalar]) -> Vector:
        """Remainder of a vector after eliminating the pivot coordinates."""
        if len(vector) != self.ambient:
            raise AmbientMismatchError(f"vector of length {len(vector)} in ambient dimension {self.ambient}")
        v = list(vector)
        for row, p in zip(self.basis, self.pivots):
            c = v[p]
            if c != 0:
                v = [a - c * b for a, b in zip(v, row)]
        return tuple(v)

    def contains(self, vector: Sequence[Scalar]) -> bool:
        return all(x == 0 for x in self.reduce(vector))

    def coordinates(self, vector: Sequence[Scalar]) -> Optional[Vector]:
        """Coefficients of a member vector in the echelon basis, or None."""
        if not self.contains(vector):
            return None
        return tuple(vector[p] for p in self.pivots)

    def combination(self, coefficients: Sequence[Scalar]) -> Vector:
        out = [self.field.zero] * self.ambient
        for c, row in zip(coefficients, self.basis):
            if c != 0:
                out = [a + c * b for a, b in zip(out, row)]
        return tuple(out)

    def __add__(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return Subspace(self.ambient, self.basis + other.basis, self.field)

    def intersection(self, other: "Subspace") -> "Subspace":
        """Zassenhaus intersection."""
        self._check(other)
        n = self.ambient
        zero = self.field.zero
        rows = [list(v) + list(v) for v in self.basis] + [list(w) + [zero] * n for w in other.basis]
        reduced, pivots = rref_rows(rows, 2 * n, self.field)
        meet = [row[n:] for row, p in zip(reduced, pivots) if p >= n]
        return Subspace(n, meet, self.field)

    __and__ = intersection

    def is_subspace_of(self, other: "Subspace") -> bool:
        self._check(other)
        return all(other.contains(v) for v in self.basis)

    def complement_basis(self) -> List[Vector]:
        """Standard basis vectors at the non-pivot columns."""
        zero, one = self.field.zero, self.field.one
        pivot_set = set(self.pivots)
        return [tuple(one if i == j else zero for i in range(self.ambient))
                for j in range(self.ambient) if j not in pivot_set]

    def image(self, matrix: Matrix) -> "Subspace":
        if matrix.ncols != self.ambient:
            raise AmbientMismatchError(f"{matrix.shape} matrix applied to ambient dimension {self.ambient}")
        return Subspace(matrix.nrows, [matrix.apply(v) for v in self.basis], self.field)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient == other.ambient and self.basis == other.basis

    def __hash__(self) -> int:
        return hash((self.ambient, self.basis))

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient={self.ambient})"


@dataclass
class SubspacePair:
    """Sum, intersection and mutual containment of two subspaces."""

    sum: Subspace
    intersection: Subspace
    first_in_second: bool
    second_in_first: bool

    def is_direct(self) -> bool:
        return self.intersection.dim == 0


def subspace_ops(a: Subspace, b: Subspace) -> SubspacePair:
    """
    Compute the lattice operations of two subspaces at once.

    Raises:
        AmbientMismatchError: If the ambient dimensions differ
    """
    a._check(b)
    return SubspacePair(sum=a + b, intersection=a.intersection(b),
                        first_in_second=a.is_subspace_of(b), second_in_first=b.is_subspace_of(a))


def solve_linear_system(matrix: Matrix, rhs: Sequence[Scalar]) -> Optional[Vector]:
    """Splitting solve: one solution of matrix x = rhs, or None."""
    return matrix.solve(rhs)
