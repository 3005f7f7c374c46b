"""
Sparse echelon reduction over hashable keys.

Vectors are dicts key -> scalar. The leading key of a row is its largest key
under the supplied sort key; rows are kept fully interreduced so that reducing
a vector needs a single pass over its pivot keys.
"""

from typing import Callable, Dict, Generic, Hashable, Iterable, List, Optional, TypeVar

from exactlin.field import Field, Scalar

K = TypeVar("K", bound=Hashable)
SparseVector = Dict


def add_scaled(target: Dict[K, Scalar], source: Dict[K, Scalar], factor: Scalar) -> None:
    """target += factor * source, dropping zeros."""
    for key, value in source.items():
        new = target.get(key, 0) + factor * value
        if new == 0:
            target.pop(key, None)
        else:
            target[key] = new


class SparseReducer(Generic[K]):
    """Interreduced echelon basis of a subspace of the span of keys."""

    def __init__(self, field: Field, sort_key: Callable[[K], object]):
        self.field = field
        self.sort_key = sort_key
        self.rows: Dict[K, Dict[K, Scalar]] = {}

    def __len__(self) -> int:
        return len(self.rows)

    def reduce(self, vector: Dict[K, Scalar]) -> Dict[K, Scalar]:
        v = {k: c for k, c in vector.items() if c != 0}
        for key in [k for k in v if k in self.rows]:
            c = v.get(key, 0)
            if c != 0:
                add_scaled(v, self.rows[key], -c)
        return v

    def contains(self, vector: Dict[K, Scalar]) -> bool:
        return not self.reduce(vector)

    def insert(self, vector: Dict[K, Scalar]) -> Optional[Dict[K, Scalar]]:
        """
        Add a vector to the span.

        Returns:
            The new normalized row, or None if the vector was already in the span
        """
        v = self.reduce(vector)
        if not v:
            return None
        lead = max(v, key=self.sort_key)
        inv = self.field.one / v[lead]
        v = {k: c * inv for k, c in v.items()}
        for row in self.rows.values():
            c = row.get(lead, 0)
            if c != 0:
                add_scaled(row, v, -c)
        self.rows[lead] = v
        return v

    def extend(self, vectors: Iterable[Dict[K, Scalar]]) -> List[Dict[K, Scalar]]:
        added = []
        for v in vectors:
            row = self.insert(v)
            if row is not None:
                added.append(row)
        return added

    def pivots(self) -> List[K]:
        return sorted(self.rows, key=self.sort_key)
