"""
Projective Presentations, Resolutions and the Auslander-Reiten Translate

Minimal projective covers come from a basis of the top of a module. A map
between sums of indecomposable projectives is a matrix of algebra elements,
which transposes to the opposite algebra; tau is D Tr and tau inverse is
Tr D, both computed from minimal presentations.
"""

import enum
import logging
from dataclasses import dataclass, field as dc_field
from typing import Dict, List, Optional, Sequence, Tuple, Union

from algebra.bound_algebra import BoundAlgebra
from algebra.element import AlgebraElement
from errors import GlobalDimensionExceededError
from exactlin.matrix import Matrix, Vector
from exactlin.subspace import Subspace
from quiver.path import Path
from repmod.representation import Representation, direct_sum, injective_rep, projective_rep, zero_rep

logger = logging.getLogger(__name__)


class TranslateMarker(enum.Enum):
    PROJECTIVE = "projective"
    INJECTIVE = "injective"


Translate = Union[Representation, TranslateMarker]


def top_generators(m: Representation) -> List[Tuple[str, Vector]]:
    """
    Vectors whose classes form a basis of top M = M / rad M.

    Returns:
        (vertex, vector in M_vertex) pairs in vertex order
    """
    rad = m.radical_subspaces()
    generators = []
    for v in m.algebra.vertices:
        for vector in rad[v].complement_basis():
            generators.append((v, vector))
    return generators


def radical(m: Representation) -> Representation:
    return m.submodule(m.radical_subspaces())


class ProjectiveSum:
    """The direct sum of P_x over a list of vertices, with repetitions."""

    def __init__(self, algebra: BoundAlgebra, vertices: Sequence[str]):
        self.algebra = algebra
        self.vertices: List[str] = list(vertices)
        self._layout: Dict[str, List[Tuple[int, Path]]] = {}

    def layout(self, w: str) -> List[Tuple[int, Path]]:
        """Basis at vertex w: (summand index, basis path from its vertex to w)."""
        if w not in self._layout:
            self._layout[w] = [(i, p) for i, x in enumerate(self.vertices)
                               for p in self.algebra.basis_paths_between(x, w)]
        return self._layout[w]

    def index(self, w: str) -> Dict[Tuple[int, Path], int]:
        return {entry: k for k, entry in enumerate(self.layout(w))}

    def representation(self) -> Representation:
        if not self.vertices:
            return zero_rep(self.algebra)
        return direct_sum([projective_rep(self.algebra, x) for x in self.vertices], self.algebra)

    def __len__(self) -> int:
        return len(self.vertices)


@dataclass
class SyzygyStep:
    """A projective cover P -> M and its kernel."""

    cover: ProjectiveSum
    generators: List[Tuple[str, Vector]]
    kernel: Dict[str, Subspace]
    syzygy: Representation


def cover_matrices(m: Representation, cover: ProjectiveSum,
                   generators: List[Tuple[str, Vector]]) -> Dict[str, Matrix]:
    """Per-vertex matrices of the map sending the i-th idempotent to the i-th generator."""
    out = {}
    for w in m.algebra.vertices:
        columns = [m.path_matrix(p).apply(generators[i][1]) for i, p in cover.layout(w)]
        out[w] = Matrix.from_columns(columns, m.dims[w], m.field)
    return out


def syzygy(m: Representation) -> SyzygyStep:
    """First syzygy of M with respect to its projective cover."""
    generators = top_generators(m)
    cover = ProjectiveSum(m.algebra, [v for v, _ in generators])
    matrices = cover_matrices(m, cover, generators)
    kernel = {}
    for w in m.algebra.vertices:
        size = len(cover.layout(w))
        kernel[w] = Subspace(size, matrices[w].nullspace(), m.field)
    omega = cover.representation().submodule(kernel)
    return SyzygyStep(cover=cover, generators=generators, kernel=kernel, syzygy=omega)


class ProjectiveMap:
    """
    A map between sums of indecomposable projectives.

    Args:
        algebra: The algebra
        domain: Vertices y_j of the domain sum of P_{y_j}
        codomain: Vertices x_i of the codomain sum of P_{x_i}
        entries: entries[i][j] in e_{x_i} A e_{y_j}; e_{y_j} maps to sum_i entries[i][j]
    """

    def __init__(self, algebra: BoundAlgebra, domain: Sequence[str], codomain: Sequence[str],
                 entries: List[List[AlgebraElement]]):
        self.algebra = algebra
        self.domain = ProjectiveSum(algebra, domain)
        self.codomain = ProjectiveSum(algebra, codomain)
        self.entries = entries

    def image_vector(self, j: int, path: Path) -> Vector:
        """Codomain coordinates of the image of the basis element e_{y_j} * path."""
        algebra = self.algebra
        w = path.target
        index = self.codomain.index(w)
        vector = [algebra.field.zero] * len(index)
        q = algebra.element(path)
        for i in range(len(self.codomain)):
            for p, c in algebra.normal_form(self.entries[i][j] * q).terms.items():
                k = index[(i, p)]
                vector[k] = vector[k] + c
        return tuple(vector)

    def image_subspaces(self) -> Dict[str, Subspace]:
        out = {}
        for w in self.algebra.vertices:
            vectors = [self.image_vector(j, p) for j, p in self.domain.layout(w)]
            out[w] = Subspace(len(self.codomain.layout(w)), vectors, self.algebra.field)
        return out

    def cokernel(self) -> Representation:
        return self.codomain.representation().quotient(self.image_subspaces())

    def transpose(self) -> "ProjectiveMap":
        """Hom(-, A) of this map, a map of projectives over the opposite algebra."""
        op = self.algebra.opposite()
        entries = [[op.normal_form(self.entries[i][j].reversed(op.quiver)) for i in range(len(self.codomain))]
                   for j in range(len(self.domain))]
        return ProjectiveMap(op, self.codomain.vertices, self.domain.vertices, entries)


def minimal_presentation(m: Representation) -> ProjectiveMap:
    """P1 -> P0 -> M -> 0 with P0, P1 projective covers."""
    first = syzygy(m)
    omega = first.syzygy
    second = top_generators(omega)
    algebra = m.algebra
    entries = [[AlgebraElement.zero(algebra.quiver, algebra.field) for _ in second] for _ in first.cover.vertices]
    for j, (u, coords) in enumerate(second):
        vector = first.kernel[u].combination(coords)
        for (i, p), c in zip(first.cover.layout(u), vector):
            if c != 0:
                entries[i][j] = entries[i][j] + AlgebraElement(algebra.quiver, {p: c}, algebra.field)
    return ProjectiveMap(algebra, [u for u, _ in second], first.cover.vertices, entries)


@dataclass
class Resolution:
    """Minimal projective resolution: terms[n] lists the vertices of P_n."""

    module: Representation
    terms: List[List[str]] = dc_field(default_factory=list)
    syzygies: List[Representation] = dc_field(default_factory=list)

    def multiplicity(self, n: int, vertex: str) -> int:
        if n >= len(self.terms):
            return 0
        return self.terms[n].count(vertex)

    @property
    def length(self) -> Optional[int]:
        """Projective dimension when the resolution terminated, else None."""
        if self.syzygies and self.syzygies[-1].is_zero():
            return len(self.terms) - 1
        return None


def projective_resolution(m: Representation, length: int) -> Resolution:
    """
    Terms P_0 ... P_length of a minimal projective resolution (fewer if it stops).

    Args:
        m: The module
        length: Last homological degree computed
    """
    resolution = Resolution(module=m)
    current = m
    for n in range(length + 1):
        if current.is_zero():
            break
        step = syzygy(current)
        resolution.terms.append(step.cover.vertices)
        resolution.syzygies.append(step.syzygy)
        current = step.syzygy
    return resolution


def is_projective(m: Representation) -> bool:
    return syzygy(m).syzygy.is_zero()


def is_injective(m: Representation) -> bool:
    return is_projective(m.dual())


def _transpose(m: Representation) -> Representation:
    return minimal_presentation(m).transpose().cokernel()


def tau(m: Representation) -> Translate:
    """
    The Auslander-Reiten translate D Tr M of an indecomposable module.

    Returns:
        A representation over the same algebra, or TranslateMarker.PROJECTIVE
    """
    if is_projective(m):
        return TranslateMarker.PROJECTIVE
    result = _transpose(m).dual(m.algebra)
    logger.debug(f"tau {m.dimension_vector()} = {result.dimension_vector()}")
    return result


def tau_inverse(m: Representation) -> Translate:
    """Tr D M, or TranslateMarker.INJECTIVE."""
    dual = m.dual()
    if is_projective(dual):
        return TranslateMarker.INJECTIVE
    result = _transpose(dual)
    logger.debug(f"tau^-1 {m.dimension_vector()} = {result.dimension_vector()}")
    return result


def ext2_dc_c(algebra: BoundAlgebra) -> Dict[Tuple[str, str], int]:
    """
    dim Ext^2(I_x, P_y) for all vertex pairs, from Hom(-, P_y) applied to P2 -> P1.

    Raises:
        GlobalDimensionExceededError: If some injective has projective dimension above 2
    """
    table: Dict[Tuple[str, str], int] = {}
    for x in algebra.vertices:
        injective = injective_rep(algebra, x)
        omega = syzygy(injective).syzygy
        second = syzygy(omega).syzygy
        if not syzygy(second).syzygy.is_zero():
            raise GlobalDimensionExceededError(2, x)
        presentation = minimal_presentation(omega)
        ones = presentation.codomain.vertices
        twos = presentation.domain.vertices
        for y in algebra.vertices:
            source_paths = [(j, p) for j, v in enumerate(ones) for p in algebra.basis_paths_between(y, v)]
            target_paths = [(k, p) for k, v in enumerate(twos) for p in algebra.basis_paths_between(y, v)]
            if not target_paths:
                table[(x, y)] = 0
                continue
            index = {entry: n for n, entry in enumerate(target_paths)}
            columns = []
            for j, p in source_paths:
                column = [algebra.field.zero] * len(target_paths)
                for k in range(len(twos)):
                    product = algebra.normal_form(algebra.element(p) * presentation.entries[j][k])
                    for q, c in product.terms.items():
                        column[index[(k, q)]] = column[index[(k, q)]] + c
                columns.append(tuple(column))
            rank = Matrix.from_columns(columns, len(target_paths), algebra.field).rank() if columns else 0
            table[(x, y)] = len(target_paths) - rank
    logger.info(f"{algebra.name}: total dim Ext^2(DA, A) = {sum(table.values())}")
    return table

