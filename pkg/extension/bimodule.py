"""
Subbimodules of the Relation Bimodule

A subbimodule of E is a subspace in E coordinates closed under left and
right multiplication by the arrows and idempotents of the base quiver.
"""

import logging
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Tuple

from algebra.element import AlgebraElement
from algebra.homological import global_dimension_le
from errors import BimoduleClosureError, PreconditionError
from exactlin.matrix import Matrix, Vector
from exactlin.subspace import Subspace
from extension.relation_extension import RelationExtension
from potential.potential import Potential, is_direct_decomposition
from repmod.resolution import ext2_dc_c

logger = logging.getLogger(__name__)


class Bimodule:
    """
    A subbimodule of E.

    Raises:
        BimoduleClosureError: If the subspace is not closed under the action
    """

    def __init__(self, extension: RelationExtension, subspace: Subspace, name: str = ""):
        if subspace.ambient != extension.e_dim:
            raise PreconditionError(f"subspace of ambient dimension {subspace.ambient}, E has {extension.e_dim}")
        self.extension = extension
        self.subspace = subspace
        self.name = name
        for action in extension.actions():
            for v in subspace.basis:
                if not subspace.contains(action.apply(v)):
                    raise BimoduleClosureError(f"{self.label()} is not closed under the bimodule action")

    @property
    def dim(self) -> int:
        return self.subspace.dim

    def label(self) -> str:
        return self.name or f"bimodule of dim {self.subspace.dim}"

    def contains(self, x: AlgebraElement) -> bool:
        return self.subspace.contains(self.extension.e_coordinates(x))

    def elements(self) -> List[AlgebraElement]:
        return [self.extension.e_element(v) for v in self.subspace.basis]

    def graded_dims(self) -> Dict[Tuple[str, str], int]:
        """dim e_x B e_y keyed by (x, y), nonzero entries only."""
        table = {}
        basis = self.extension.e_basis
        for x in self.extension.base.vertices:
            for y in self.extension.base.vertices:
                columns = [i for i, p in enumerate(basis) if p.source == x and p.target == y]
                if not columns:
                    continue
                rank = Subspace(len(columns), [[v[i] for i in columns] for v in self.subspace.basis],
                                self.subspace.field).dim
                if rank:
                    table[(x, y)] = rank
        return table

    def radical(self) -> "Bimodule":
        """Span of the products of B with arrows of the base quiver on either side."""
        vectors = []
        for a in self.extension.base.quiver.arrows:
            for side in ("left", "right"):
                action = self.extension.action_matrix(a.name, side)
                vectors.extend(action.apply(v) for v in self.subspace.basis)
        return Bimodule(self.extension, Subspace(self.extension.e_dim, vectors, self.subspace.field))

    def top_graded_dims(self) -> Dict[Tuple[str, str], int]:
        rad = self.radical().graded_dims()
        return {k: d - rad.get(k, 0) for k, d in self.graded_dims().items() if d - rad.get(k, 0)}

    def __add__(self, other: "Bimodule") -> "Bimodule":
        return Bimodule(self.extension, self.subspace + other.subspace)

    def intersection(self, other: "Bimodule") -> "Bimodule":
        return Bimodule(self.extension, self.subspace.intersection(other.subspace))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Bimodule):
            return NotImplemented
        return self.subspace == other.subspace

    def __hash__(self) -> int:
        return hash(self.subspace)

    def to_json(self) -> Dict:
        return {
            "dim": self.dim,
            "basis": [e.to_text() for e in self.elements()],
            "graded": [[x, y, d] for (x, y), d in sorted(self.graded_dims().items())],
        }

    def __repr__(self) -> str:
        return f"Bimodule({self.label()})"


def whole(extension: RelationExtension) -> Bimodule:
    return Bimodule(extension, Subspace.full(extension.e_dim, extension.extended.field), name="E")


def zero_bimodule(extension: RelationExtension) -> Bimodule:
    return Bimodule(extension, Subspace.zero(extension.e_dim, extension.extended.field), name="0")


def close_under_action(extension: RelationExtension, vectors: Iterable[Vector]) -> Subspace:
    field = extension.extended.field
    space = Subspace(extension.e_dim, list(vectors), field)
    work = list(space.basis)
    actions = extension.actions()
    while work:
        v = work.pop()
        for action in actions:
            w = action.apply(v)
            if not space.contains(w):
                space = space + Subspace(extension.e_dim, [w], field)
                work.append(w)
    return space


def subbimodule_generated(extension: RelationExtension, generators: Iterable[AlgebraElement],
                          name: str = "") -> Bimodule:
    """
    The subbimodule generated by elements of E.

    Raises:
        NotInBimoduleError: If a generator has a component outside E
    """
    vectors = [extension.e_coordinates(g) for g in generators]
    return Bimodule(extension, close_under_action(extension, vectors), name=name)


def partial_bimodule_of(extension: RelationExtension, summand: Potential) -> Bimodule:
    """
    The subbimodule generated by the new arrows occurring in a summand of W.

    Raises:
        PreconditionError: If the summand is not supported on whole cycles of W
    """
    w = extension.potential
    for cycle, coeff in summand.items():
        if w.coefficient(cycle) != coeff:
            raise PreconditionError(f"cycle {cycle} of the summand is not a term of W")
    arrows = [a for a in extension.new_arrow_names if a in summand.arrows()]
    gens = [extension.extended.arrow(a) for a in arrows]
    return subbimodule_generated(extension, gens, name="<" + ",".join(arrows) + ">")


@dataclass
class BimoduleSplit:
    first: Bimodule
    second: Bimodule
    intersection_dim: int
    sum_dim: int

    @property
    def is_direct(self) -> bool:
        return self.intersection_dim == 0 and self.sum_dim == self.first.extension.e_dim


def check_split(e1: Bimodule, e2: Bimodule) -> BimoduleSplit:
    meet = e1.subspace.intersection(e2.subspace)
    total = e1.subspace + e2.subspace
    return BimoduleSplit(first=e1, second=e2, intersection_dim=meet.dim, sum_dim=total.dim)


def induced_bimodule_decomposition(extension: RelationExtension, w1: Potential, w2: Potential) -> BimoduleSplit:
    """
    Partial relation bimodules of a direct potential split, with the directness verdict.

    Raises:
        PreconditionError: If w1 + w2 is not a direct decomposition of W
    """
    if not is_direct_decomposition(extension.potential, w1, w2):
        raise PreconditionError("potential split is not a direct decomposition of W")
    split = check_split(partial_bimodule_of(extension, w1), partial_bimodule_of(extension, w2))
    if not split.is_direct:
        logger.error(f"direct potential split induced a non-direct bimodule split "
                     f"(intersection {split.intersection_dim}, sum {split.sum_dim} of {extension.e_dim})")
    return split


@dataclass
class DirectSummandReport:
    bimodule: Bimodule
    is_summand: bool
    complement: Optional[Bimodule] = None

    def __bool__(self) -> bool:
        return self.is_summand


def is_direct_summand(extension: RelationExtension, e1: Bimodule) -> DirectSummandReport:
    """
    Look for a bimodule complement of e1 in E.

    A complement exists iff there is an idempotent bimodule endomorphism of E
    with image e1. In a basis adapted to e1 such a map is [[I, T], [0, 0]]
    with T unknown, and commuting with every action matrix is linear in T.
    """
    field = extension.extended.field
    n, k = extension.e_dim, e1.dim
    if k == n:
        return DirectSummandReport(e1, True, zero_bimodule(extension))
    if k == 0:
        return DirectSummandReport(e1, True, whole(extension))
    adapted = Matrix.from_columns(list(e1.subspace.basis) + e1.subspace.complement_basis(), n, field)
    inverse = adapted.inverse()

    def conjugate(core: Matrix) -> Matrix:
        return adapted @ core @ inverse

    base_core = Matrix([[field.one if (i == j and i < k) else field.zero for j in range(n)] for i in range(n)],
                       ncols=n, field=field)
    phi0 = conjugate(base_core)
    units = []
    for i in range(k):
        for j in range(k, n):
            core = Matrix([[field.one if (r, c) == (i, j) else field.zero for c in range(n)] for r in range(n)],
                          ncols=n, field=field)
            units.append(conjugate(core))
    rows: List[List] = []
    rhs: List = []
    for action in extension.actions():
        residual = phi0 @ action - action @ phi0
        commutators = [u @ action - action @ u for u in units]
        for r in range(n):
            for c in range(n):
                rows.append([m[r, c] for m in commutators])
                rhs.append(-residual[r, c])
    solution = Matrix(rows, ncols=len(units), field=field).solve(rhs)
    if solution is None:
        logger.info(f"{e1.label()} has no bimodule complement in E")
        return DirectSummandReport(e1, False)
    phi = phi0
    for t, u in zip(solution, units):
        if t != 0:
            phi = phi + u.scale(t)
    kernel = Subspace(n, phi.nullspace(), field)
    return DirectSummandReport(e1, True, Bimodule(extension, kernel, name=f"complement of {e1.label()}"))


def structural_and_homological_dims(extension: RelationExtension, stated: Optional[int] = None) -> Dict:
    """
    Compare dim E computed from the extension with the sum of dim Ext^2(I_x, P_y).

    Args:
        extension: The relation extension
        stated: A dimension claimed elsewhere, logged as a discrepancy when it disagrees

    Returns:
        Report with both dimensions and the agreement verdicts
    """
    homological = ext2_dc_c(extension.base)
    structural = extension.graded_dims()
    graded_agree = all(homological.get((y, x), 0) == d for (x, y), d in structural.items()) and \
        sum(homological.values()) == extension.e_dim
    report = {
        "schema": "relext.arbitration/1",
        "algebra": extension.base.name,
        "structural_dim": extension.e_dim,
        "homological_dim": sum(homological.values()),
        "graded_agree": graded_agree,
        "stated_dim": stated,
        "stated_agrees": stated is None or stated == extension.e_dim,
        "gldim_le_2": bool(global_dimension_le(extension.base, 2)),
    }
    if stated is not None and stated != extension.e_dim:
        logger.warning(f"{extension.base.name}: stated dim E = {stated} but both computations give "
                       f"{extension.e_dim} structurally and {report['homological_dim']} homologically")
    if not graded_agree:
        logger.error(f"{extension.base.name}: structural and homological E disagree")
    return report
