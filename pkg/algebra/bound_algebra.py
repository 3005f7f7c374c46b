"""
Bound Quiver Algebras

Builds kQ/I for an admissible ideal by capped linear closure: the ideal is
grown length by length until some length N has all its paths inside it.
The basis of the quotient is the set of non-pivot paths of length < N under
the length-lex order, and every path of length < N gets a normal form.
"""

import logging
from dataclasses import dataclass, field as dc_field
from typing import Dict, List, Optional, Tuple

from algebra.element import AlgebraElement
from errors import NotFiniteDimensionalError, PreconditionError
from exactlin.field import QQ, Field, Scalar
from exactlin.matrix import Matrix, Vector
from exactlin.sparse import SparseReducer
from quiver.path import Path
from quiver.quiver import Quiver, enumerate_paths

logger = logging.getLogger(__name__)

DEFAULT_LENGTH_CAP = 64
DEFAULT_MAX_PATHS = 250000

SparseVec = Dict[Path, Scalar]


def _left_arrow(quiver: Quiver, name: str, vector: SparseVec) -> SparseVec:
    arrow = quiver.arrow(name)
    out: SparseVec = {}
    for p, c in vector.items():
        if p.source == arrow.target:
            q = Path(arrow.source, p.target, (name,) + p.arrows)
            out[q] = out.get(q, 0) + c
    return {k: v for k, v in out.items() if v != 0}


def _right_arrow(quiver: Quiver, name: str, vector: SparseVec) -> SparseVec:
    arrow = quiver.arrow(name)
    out: SparseVec = {}
    for p, c in vector.items():
        if p.target == arrow.source:
            q = Path(p.source, arrow.target, p.arrows + (name,))
            out[q] = out.get(q, 0) + c
    return {k: v for k, v in out.items() if v != 0}


def _truncate(vector: SparseVec, bound: int) -> SparseVec:
    return {p: c for p, c in vector.items() if p.length < bound}


def truncated_ideal_closure(quiver: Quiver, field: Field, generators: List[AlgebraElement],
                            bound: int) -> SparseReducer:
    """
    Span of all u*g*v truncated below the given length, as an interreduced echelon basis.

    Args:
        quiver: Ambient quiver
        field: Scalar field
        generators: Ideal generators
        bound: Paths of length >= bound are discarded
    """
    reducer: SparseReducer = SparseReducer(field, quiver.path_key)
    work: List[SparseVec] = []
    for g in generators:
        row = reducer.insert(_truncate(g.terms, bound))
        if row is not None:
            work.append(dict(row))
    names = [a.name for a in quiver.arrows]
    while work:
        vector = work.pop()
        for name in names:
            for product in (_left_arrow(quiver, name, vector), _right_arrow(quiver, name, vector)):
                product = _truncate(product, bound)
                if product:
                    row = reducer.insert(product)
                    if row is not None:
                        work.append(dict(row))
    return reducer


@dataclass
class MinimalRelation:
    source: str
    target: str
    element: AlgebraElement
    pivot: Path


@dataclass
class RelationSystem:
    """Minimal relations ordered by (source, target) and echelon pivot."""

    relations: List[MinimalRelation] = dc_field(default_factory=list)

    def __len__(self) -> int:
        return len(self.relations)

    def __iter__(self):
        return iter(self.relations)

    def elements(self) -> List[AlgebraElement]:
        return [r.element for r in self.relations]

    def count(self, source: str, target: str) -> int:
        return sum(1 for r in self.relations if r.source == source and r.target == target)

    def counts(self) -> Dict[Tuple[str, str], int]:
        table: Dict[Tuple[str, str], int] = {}
        for r in self.relations:
            table[(r.source, r.target)] = table.get((r.source, r.target), 0) + 1
        return table


class BoundAlgebra:
    """
    A finite dimensional algebra kQ/I.

    Args:
        quiver: The quiver Q
        relations: Generators of I, each a parallel combination of paths
        field: Ground field
        name: Display name
        length_cap: Largest path length explored before giving up

    Raises:
        NotFiniteDimensionalError: If no nilpotency bound exists below the cap
    """

    def __init__(self, quiver: Quiver, relations: List[AlgebraElement], field: Field = QQ,
                 name: str = "", length_cap: int = DEFAULT_LENGTH_CAP, max_paths: int = DEFAULT_MAX_PATHS):
        self.quiver = quiver
        self.field = field
        self.name = name or "algebra"
        self.length_cap = length_cap
        self.max_paths = max_paths
        self.relations: List[AlgebraElement] = []
        for r in relations:
            if r.is_zero():
                continue
            if r.endpoints() is None:
                raise PreconditionError(f"relation {r} is not a combination of parallel paths")
            self.relations.append(r.with_quiver(quiver))
        self._opposite: Optional["BoundAlgebra"] = None
        self._nf_cache: Dict[Path, SparseVec] = {}
        self._action_cache: Dict[Tuple[str, str], Matrix] = {}
        self._minimal: Optional[RelationSystem] = None
        self.nilpotency_bound = self._find_nilpotency_bound()
        self._quotient = truncated_ideal_closure(quiver, field, self.relations, self.nilpotency_bound)
        self.basis: List[Path] = self._compute_basis()
        self.basis_index: Dict[Path, int] = {p: i for i, p in enumerate(self.basis)}
        logger.info(f"built {self.name}: dim {self.dim}, nilpotency bound {self.nilpotency_bound}")

    def _find_nilpotency_bound(self) -> int:
        quiver = self.quiver
        reducer: SparseReducer = SparseReducer(self.field, quiver.path_key)
        paths_by_length: List[List[Path]] = [enumerate_paths(quiver, 0)]
        if not paths_by_length[0]:
            return 0
        pending = sorted(self.relations, key=lambda r: r.max_length())
        total = len(paths_by_length[0])
        names = [a.name for a in quiver.arrows]
        for level in range(1, self.length_cap + 1):
            previous = paths_by_length[-1]
            paths_by_length.append([Path(p.source, a.target, p.arrows + (a.name,))
                                    for p in previous for a in quiver.arrows_from(p.target)])
            total += len(paths_by_length[-1])
            if total > self.max_paths:
                raise NotFiniteDimensionalError(self.length_cap, f"more than {self.max_paths} paths up to length {level}")
            vectors = []
            for row in list(reducer.rows.values()):
                for name in names:
                    vectors.append(_left_arrow(quiver, name, row))
                    vectors.append(_right_arrow(quiver, name, row))
            while pending and pending[0].max_length() <= level:
                vectors.append(pending.pop(0).terms)
            reducer.extend(v for v in vectors if v)
            for n in range(level + 1):
                if all(reducer.contains({p: self.field.one}) for p in paths_by_length[n]):
                    logger.debug(f"{self.name}: all paths of length {n} lie in the ideal (level {level})")
                    return n
        raise NotFiniteDimensionalError(self.length_cap)

    def _compute_basis(self) -> List[Path]:
        pivots = set(self._quotient.rows)
        basis = []
        for n in range(self.nilpotency_bound):
            basis.extend(p for p in enumerate_paths(self.quiver, n) if p not in pivots)
        return basis

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def vertices(self) -> Tuple[str, ...]:
        return self.quiver.vertices

    def _path_normal_form(self, path: Path) -> SparseVec:
        cached = self._nf_cache.get(path)
        if cached is None:
            if path.length >= self.nilpotency_bound:
                cached = {}
            else:
                cached = self._quotient.reduce({path: self.field.one})
            self._nf_cache[path] = cached
        return cached

    def normal_form(self, x: AlgebraElement) -> AlgebraElement:
        """Unique representative of x supported on basis paths."""
        terms: SparseVec = {}
        for p, c in x.terms.items():
            for q, d in self._path_normal_form(p).items():
                terms[q] = terms.get(q, self.field.zero) + c * d
        return AlgebraElement(self.quiver, terms, self.field)

    def contains(self, x: AlgebraElement) -> bool:
        """Ideal membership."""
        return self.normal_form(x).is_zero()

    def multiply(self, x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
        return self.normal_form(self.normal_form(x) * self.normal_form(y))

    def element(self, path: Path) -> AlgebraElement:
        return AlgebraElement(self.quiver, {path: 1}, self.field)

    def idempotent(self, vertex: str) -> AlgebraElement:
        self.quiver.check_vertex(vertex)
        return AlgebraElement.idempotent(self.quiver, vertex, self.field)

    def arrow(self, name: str) -> AlgebraElement:
        return AlgebraElement.arrow(self.quiver, name, self.field)

    def word(self, *names: str) -> AlgebraElement:
        """Class of a path given by arrow names."""
        return self.normal_form(AlgebraElement.word(self.quiver, names, 1, self.field))

    def coordinates(self, x: AlgebraElement) -> Vector:
        zero = self.field.zero
        vec = [zero] * self.dim
        for p, c in self.normal_form(x).terms.items():
            vec[self.basis_index[p]] = c
        return tuple(vec)

    def from_coordinates(self, vector) -> AlgebraElement:
        return AlgebraElement(self.quiver, {p: c for p, c in zip(self.basis, vector)}, self.field)

    def basis_paths_between(self, source: str, target: str) -> List[Path]:
        """Basis of e_source A e_target."""
        self.quiver.check_vertex(source)
        self.quiver.check_vertex(target)
        return [p for p in self.basis if p.source == source and p.target == target]

    def basis_paths_from(self, source: str) -> List[Path]:
        return [p for p in self.basis if p.source == source]

    def action_matrix(self, name: str, side: str) -> Matrix:
        """
        Matrix of left or right multiplication by an arrow on basis coordinates.

        Args:
            name: Arrow name
            side: "left" (x -> a*x) or "right" (x -> x*a)
        """
        key = (name, side)
        if key not in self._action_cache:
            arrow = self.arrow(name)
            columns = []
            for p in self.basis:
                product = arrow * self.element(p) if side == "left" else self.element(p) * arrow
                columns.append(self.coordinates(product))
            self._action_cache[key] = Matrix.from_columns(columns, self.dim, self.field)
        return self._action_cache[key]

    def opposite(self) -> "BoundAlgebra":
        """The opposite algebra on the opposite quiver; opposite().opposite() is self."""
        if self._opposite is None:
            op_quiver = self.quiver.opposite()
            op = BoundAlgebra(op_quiver, [r.reversed(op_quiver) for r in self.relations], self.field,
                              name=f"{self.name}^op", length_cap=self.length_cap, max_paths=self.max_paths)
            op._opposite = self
            self._opposite = op
        return self._opposite

    def ideal_equals(self, other: "BoundAlgebra") -> bool:
        """True iff both algebras have the same quiver and the same ideal."""
        if self.quiver != other.quiver:
            return False
        return all(other.contains(r) for r in self.relations) and all(self.contains(r) for r in other.relations)

    def minimal_relation_system(self) -> RelationSystem:
        if self._minimal is None:
            self._minimal = minimal_relation_system(self)
        return self._minimal

    def to_json(self) -> Dict:
        return {
            "schema": "relext.algebra/1",
            "name": self.name,
            "field": self.field.name,
            "vertices": list(self.quiver.vertices),
            "arrows": [[a.name, a.source, a.target] for a in self.quiver.arrows],
            "relations": [r.to_text() for r in self.relations],
            "dim": self.dim,
            "nilpotency_bound": self.nilpotency_bound,
            "basis": [str(p) for p in self.basis],
        }

    def __repr__(self) -> str:
        return f"BoundAlgebra({self.name}, dim={self.dim})"


def build_algebra(quiver: Quiver, relations: List[AlgebraElement], length_cap: int = DEFAULT_LENGTH_CAP,
                  field: Field = QQ, name: str = "") -> BoundAlgebra:
    """Build kQ/I from generating relations."""
    return BoundAlgebra(quiver, relations, field=field, name=name, length_cap=length_cap)


def normal_form(algebra: BoundAlgebra, x: AlgebraElement) -> AlgebraElement:
    return algebra.normal_form(x)


def multiply(algebra: BoundAlgebra, x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    return algebra.multiply(x, y)


def minimal_relation_system(algebra: BoundAlgebra) -> RelationSystem:
    """
    A minimal system of relations: a basis of I/(rI + Ir), block by block.

    Everything is computed modulo paths of length > N, which lie in rI + Ir.
    Representatives are the echelon rows of I reduced modulo rI + Ir, so the
    choice depends only on the length-lex order.
    """
    quiver, field = algebra.quiver, algebra.field
    bound = algebra.nilpotency_bound + 1
    ideal = truncated_ideal_closure(quiver, field, algebra.relations, bound)
    radical_part: SparseReducer = SparseReducer(field, quiver.path_key)
    for row in ideal.rows.values():
        for a in quiver.arrows:
            for product in (_left_arrow(quiver, a.name, row), _right_arrow(quiver, a.name, row)):
                product = _truncate(product, bound)
                if product:
                    radical_part.insert(product)
    quotient: SparseReducer = SparseReducer(field, quiver.path_key)
    for pivot in ideal.pivots():
        remainder = radical_part.reduce(ideal.rows[pivot])
        blocks: Dict[Tuple[str, str], SparseVec] = {}
        for p, c in remainder.items():
            blocks.setdefault((p.source, p.target), {})[p] = c
        for block in blocks.values():
            quotient.insert(block)
    relations = []
    for pivot in quotient.pivots():
        element = AlgebraElement(quiver, quotient.rows[pivot], field)
        relations.append(MinimalRelation(pivot.source, pivot.target, element, pivot))
    vindex = quiver.vertex_index
    relations.sort(key=lambda r: (vindex[r.source], vindex[r.target], quiver.path_key(r.pivot)))
    return RelationSystem(relations)
