"""
Quiver Representations

Right modules over a bound quiver algebra: one vector space per vertex and,
for each arrow a: s -> t, a matrix of shape (dim t, dim s). A path a1...ak
acts by M(ak)...M(a1).
"""

import logging
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from algebra.bound_algebra import BoundAlgebra
from algebra.element import AlgebraElement
from errors import BimoduleClosureError, PreconditionError, QuiverError, RelationsViolatedError
from exactlin.matrix import Matrix, Vector, block_diagonal
from exactlin.subspace import Subspace
from quiver.path import Path

logger = logging.getLogger(__name__)


class Representation:
    """
    A finite dimensional right module given as a quiver representation.

    Args:
        algebra: The algebra acting on the module
        dims: Dimension per vertex (missing vertices are zero)
        maps: Matrix per arrow (missing arrows act by zero)
        name: Optional label
        check: Verify that every relation acts by zero
    """

    def __init__(self, algebra: BoundAlgebra, dims: Mapping[str, int], maps: Optional[Mapping[str, Matrix]] = None,
                 name: str = "", check: bool = True):
        self.algebra = algebra
        self.field = algebra.field
        self.name = name
        quiver = algebra.quiver
        for v in dims:
            quiver.check_vertex(v)
        self.dims: Dict[str, int] = {v: int(dims.get(v, 0)) for v in quiver.vertices}
        self.maps: Dict[str, Matrix] = {}
        maps = maps or {}
        for a in quiver.arrows:
            shape = (self.dims[a.target], self.dims[a.source])
            matrix = maps.get(a.name)
            if matrix is None:
                matrix = Matrix.zeros(*shape, field=self.field)
            if matrix.shape != shape:
                raise PreconditionError(f"matrix of arrow {a.name} has shape {matrix.shape}, expected {shape}")
            self.maps[a.name] = matrix
        unknown = set(maps) - set(self.maps)
        if unknown:
            raise QuiverError(f"maps given for unknown arrows {sorted(unknown)}")
        if check and not self.satisfies_relations():
            raise RelationsViolatedError(f"representation {name or self.dimension_vector()} violates the relations")

    def dimension_vector(self) -> Tuple[int, ...]:
        return tuple(self.dims[v] for v in self.algebra.vertices)

    def dimension_array(self) -> np.ndarray:
        return np.array(self.dimension_vector(), dtype=np.int64)

    @property
    def total_dim(self) -> int:
        return sum(self.dims.values())

    def is_zero(self) -> bool:
        return self.total_dim == 0

    def offsets(self) -> Dict[str, int]:
        out, acc = {}, 0
        for v in self.algebra.vertices:
            out[v] = acc
            acc += self.dims[v]
        return out

    def path_matrix(self, path: Path) -> Matrix:
        result = Matrix.identity(self.dims[path.source], self.field)
        for name in path.arrows:
            result = self.maps[name] @ result
        return result

    def element_matrix(self, x: AlgebraElement, source: Optional[str] = None,
                       target: Optional[str] = None) -> Matrix:
        """Action of a parallel element from M_source to M_target."""
        ends = x.endpoints()
        if ends is None:
            if source is None or target is None:
                raise PreconditionError(f"element {x} is not parallel")
            ends = (source, target)
        s, t = ends
        result = Matrix.zeros(self.dims[t], self.dims[s], self.field)
        for p, c in x.terms.items():
            result = result + self.path_matrix(p).scale(c)
        return result

    def satisfies_relations(self) -> bool:
        return all(self.element_matrix(r).is_zero() for r in self.algebra.relations)

    def dual(self, target: Optional[BoundAlgebra] = None) -> "Representation":
        """
        Vector space dual, a representation of the opposite algebra.

        Args:
            target: Algebra on the opposite quiver (defaults to algebra.opposite())
        """
        target = target or self.algebra.opposite()
        return Representation(target, self.dims, {a: m.transpose() for a, m in self.maps.items()},
                              name=f"D({self.name})" if self.name else "", check=False)

    def direct_sum(self, other: "Representation") -> "Representation":
        dims = {v: self.dims[v] + other.dims[v] for v in self.dims}
        maps = {a: block_diagonal([self.maps[a], other.maps[a]], self.field) for a in self.maps}
        return Representation(self.algebra, dims, maps, check=False)

    def radical_subspaces(self) -> Dict[str, Subspace]:
        """rad M at each vertex: the span of images of incoming arrows."""
        out = {}
        for v in self.algebra.vertices:
            vectors: List[Vector] = []
            for a in self.algebra.quiver.arrows_to(v):
                matrix = self.maps[a.name]
                vectors.extend(matrix.column(j) for j in range(matrix.ncols))
            out[v] = Subspace(self.dims[v], vectors, self.field)
        return out

    def top_dimensions(self) -> Dict[str, int]:
        rad = self.radical_subspaces()
        return {v: self.dims[v] - rad[v].dim for v in self.algebra.vertices}

    def socle_subspaces(self) -> Dict[str, Subspace]:
        """soc M at each vertex: the common kernel of outgoing arrows."""
        out = {}
        for v in self.algebra.vertices:
            outgoing = [self.maps[a.name] for a in self.algebra.quiver.arrows_from(v)]
            if not outgoing:
                out[v] = Subspace.full(self.dims[v], self.field)
                continue
            stacked = outgoing[0]
            for m in outgoing[1:]:
                stacked = stacked.vstack(m)
            out[v] = Subspace(self.dims[v], stacked.nullspace(), self.field)
        return out

    def socle_dimensions(self) -> Dict[str, int]:
        return {v: s.dim for v, s in self.socle_subspaces().items()}

    def submodule(self, subspaces: Mapping[str, Subspace]) -> "Representation":
        """
        Restriction to a subrepresentation given by echelon bases per vertex.

        Raises:
            BimoduleClosureError: If the subspaces are not closed under the arrows
        """
        maps = {}
        for a in self.algebra.quiver.arrows:
            src, tgt = subspaces[a.source], subspaces[a.target]
            columns = []
            for b in src.basis:
                coords = tgt.coordinates(self.maps[a.name].apply(b))
                if coords is None:
                    raise BimoduleClosureError(f"subspaces are not closed under arrow {a.name}")
                columns.append(coords)
            maps[a.name] = Matrix.from_columns(columns, tgt.dim, self.field)
        return Representation(self.algebra, {v: subspaces[v].dim for v in self.dims}, maps, check=False)

    def quotient(self, subspaces: Mapping[str, Subspace]) -> "Representation":
        """Quotient by a subrepresentation; coordinates are the non-pivot columns."""
        keep = {v: [j for j in range(self.dims[v]) if j not in set(subspaces[v].pivots)] for v in self.dims}
        maps = {}
        for a in self.algebra.quiver.arrows:
            tgt = subspaces[a.target]
            columns = []
            for j in keep[a.source]:
                image = tgt.reduce(self.maps[a.name].column(j))
                columns.append(tuple(image[i] for i in keep[a.target]))
            maps[a.name] = Matrix.from_columns(columns, len(keep[a.target]), self.field)
        return Representation(self.algebra, {v: len(keep[v]) for v in self.dims}, maps, check=False)

    def to_json(self) -> Dict:
        return {
            "dimension_vector": list(self.dimension_vector()),
            "maps": {a: m.to_lists() for a, m in sorted(self.maps.items())},
        }

    def __repr__(self) -> str:
        label = f"{self.name} " if self.name else ""
        return f"Representation({label}{self.dimension_vector()})"


def simple_rep(algebra: BoundAlgebra, vertex: str) -> Representation:
    algebra.quiver.check_vertex(vertex)
    return Representation(algebra, {vertex: 1}, name=f"S{vertex}", check=False)


def zero_rep(algebra: BoundAlgebra) -> Representation:
    return Representation(algebra, {}, check=False)


def projective_rep(algebra: BoundAlgebra, vertex: str) -> Representation:
    """
    P_x = e_x A with basis the basis paths starting at x.

    Raises:
        QuiverError: If the vertex is unknown
    """
    algebra.quiver.check_vertex(vertex)
    paths = {v: algebra.basis_paths_between(vertex, v) for v in algebra.vertices}
    index = {v: {p: i for i, p in enumerate(paths[v])} for v in algebra.vertices}
    maps = {}
    for a in algebra.quiver.arrows:
        columns = []
        for p in paths[a.source]:
            column = [algebra.field.zero] * len(paths[a.target])
            product = algebra.normal_form(algebra.element(p) * algebra.arrow(a.name))
            for q, c in product.terms.items():
                column[index[a.target][q]] = c
            columns.append(tuple(column))
        maps[a.name] = Matrix.from_columns(columns, len(paths[a.target]), algebra.field)
    rep = Representation(algebra, {v: len(paths[v]) for v in algebra.vertices}, maps, name=f"P{vertex}", check=False)
    rep.basis_paths = paths
    return rep


def injective_rep(algebra: BoundAlgebra, vertex: str) -> Representation:
    """I_x = D(A e_x), the dual of the projective of the opposite algebra."""
    rep = projective_rep(algebra.opposite(), vertex).dual(algebra)
    rep.name = f"I{vertex}"
    return rep


def direct_sum(reps: Sequence[Representation], algebra: BoundAlgebra) -> Representation:
    result = zero_rep(algebra)
    for r in reps:
        result = result.direct_sum(r)
    return result
