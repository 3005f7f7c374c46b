"""
Relation Extensions

For a triangular algebra C = kQ/I of global dimension at most two, every
minimal relation rho from y to x gets a new arrow x -> y. The Keller
potential sums new arrow times relation, and the relation extension is the
Jacobian algebra modulo the square of the ideal of new arrows. The relation
bimodule E is spanned by the basis classes carrying exactly one new arrow.
"""

import itertools
import logging
from dataclasses import dataclass, field as dc_field
from typing import Dict, List, Optional, Sequence, Tuple

from algebra.bound_algebra import BoundAlgebra, MinimalRelation
from algebra.element import AlgebraElement
from algebra.homological import global_dimension_le
from errors import GlobalDimensionExceededError, NotInBimoduleError, NotTriangularError, PreconditionError
from exactlin.matrix import Matrix, Vector
from potential.potential import Potential
from quiver.path import Path
from quiver.quiver import Arrow, Quiver, enumerate_paths

logger = logging.getLogger(__name__)


def old_paths(quiver: Quiver) -> List[Path]:
    """All paths of an acyclic quiver, trivial ones included."""
    paths: List[Path] = []
    length = 0
    while True:
        layer = enumerate_paths(quiver, length)
        if not layer:
            return paths
        paths.extend(layer)
        length += 1


def square_of_new_arrows(quiver: Quiver, base: Quiver, new_arrows: Sequence[str], field) -> List[AlgebraElement]:
    """Monomials n1*u*n2 with n1, n2 new arrows and u a path of the base quiver."""
    generators = []
    paths = old_paths(base)
    for n1, n2 in itertools.product(new_arrows, repeat=2):
        first, second = quiver.arrow(n1), quiver.arrow(n2)
        for u in paths:
            if u.source == first.target and u.target == second.source:
                word = (n1,) + u.arrows + (n2,)
                generators.append(AlgebraElement(quiver, {Path(first.source, second.target, word): 1}, field))
    return generators


@dataclass
class RelationExtension:
    """The relation extension of a base algebra and its relation bimodule."""

    base: BoundAlgebra
    quiver: Quiver
    new_arrows: List[Arrow]
    relation_of: Dict[str, MinimalRelation]
    potential: Potential
    extended: BoundAlgebra
    e_basis: List[Path] = dc_field(default_factory=list)

    def __post_init__(self):
        self.e_index: Dict[Path, int] = {p: i for i, p in enumerate(self.e_basis)}
        self._actions: Dict[Tuple[str, str], Matrix] = {}

    @property
    def new_arrow_names(self) -> List[str]:
        return [a.name for a in self.new_arrows]

    @property
    def e_dim(self) -> int:
        return len(self.e_basis)

    def degree(self, path: Path) -> int:
        return path.count_in(set(self.new_arrow_names))

    def graded_dims(self) -> Dict[Tuple[str, str], int]:
        """dim e_x E e_y keyed by (x, y): E basis paths from x to y."""
        table: Dict[Tuple[str, str], int] = {}
        for p in self.e_basis:
            table[(p.source, p.target)] = table.get((p.source, p.target), 0) + 1
        return table

    def word(self, *names: str) -> AlgebraElement:
        """Class in the relation extension of a path given by arrow names."""
        return self.extended.word(*names)

    def e_coordinates(self, x: AlgebraElement) -> Vector:
        """
        Coordinates of an element of E in the E basis.

        Raises:
            NotInBimoduleError: If x has a component outside E
        """
        nf = self.extended.normal_form(x.with_quiver(self.quiver))
        vector = [self.extended.field.zero] * self.e_dim
        for p, c in nf.terms.items():
            if p not in self.e_index:
                raise NotInBimoduleError(f"{x} does not lie in the relation bimodule (term {p})")
            vector[self.e_index[p]] = c
        return tuple(vector)

    def e_element(self, vector: Sequence) -> AlgebraElement:
        return AlgebraElement(self.quiver, {p: c for p, c in zip(self.e_basis, vector)}, self.extended.field)

    def action_matrix(self, name: str, side: str) -> Matrix:
        """Left or right multiplication on E by an arrow of the base quiver, in E coordinates."""
        key = (name, side)
        if key not in self._actions:
            arrow = self.extended.arrow(name)
            columns = []
            for p in self.e_basis:
                e = self.extended.element(p)
                product = arrow * e if side == "left" else e * arrow
                columns.append(self.e_coordinates(product))
            self._actions[key] = Matrix.from_columns(columns, self.e_dim, self.extended.field)
        return self._actions[key]

    def idempotent_projection(self, vertex: str, side: str) -> Matrix:
        """Multiplication by e_vertex on E: keeps basis paths starting (left) or ending (right) at vertex."""
        field = self.extended.field
        rows = []
        for i, p in enumerate(self.e_basis):
            end = p.source if side == "left" else p.target
            rows.append([field.one if (i == j and end == vertex) else field.zero for j in range(self.e_dim)])
        return Matrix(rows, ncols=self.e_dim, field=field)

    def actions(self) -> List[Matrix]:
        """All generators of the bimodule action on E."""
        out = []
        for a in self.base.quiver.arrows:
            out.append(self.action_matrix(a.name, "left"))
            out.append(self.action_matrix(a.name, "right"))
        for v in self.base.vertices:
            out.append(self.idempotent_projection(v, "left"))
            out.append(self.idempotent_projection(v, "right"))
        return out

    def check_invariants(self) -> Dict[str, bool]:
        report = {
            "dimension": self.extended.dim == self.base.dim + self.e_dim,
            "degree": all(self.degree(p) <= 1 for p in self.extended.basis),
        }
        for name, ok in report.items():
            if not ok:
                logger.error(f"relation extension of {self.base.name} violates the {name} invariant")
        return report

    def to_json(self) -> Dict:
        return {
            "schema": "relext.extension/1",
            "algebra": self.base.name,
            "dim_base": self.base.dim,
            "dim_extended": self.extended.dim,
            "new_arrows": [[a.name, a.source, a.target, self.relation_of[a.name].element.to_text()]
                           for a in self.new_arrows],
            "potential": self.potential.to_text(),
            "dim_E": self.e_dim,
            "E_basis": [str(p) for p in self.e_basis],
            "E_graded": [[x, y, d] for (x, y), d in sorted(self.graded_dims().items())],
            "invariants": self.check_invariants(),
        }


def build_relation_extension(c: BoundAlgebra, new_arrow_names: Optional[Sequence[str]] = None,
                             check_global_dimension: bool = True) -> RelationExtension:
    """
    Build the relation extension of a triangular algebra of global dimension at most two.

    Args:
        c: The base algebra
        new_arrow_names: Names for the new arrows in minimal-relation order (default new1, new2, ...)
        check_global_dimension: Verify gldim <= 2 first

    Raises:
        NotTriangularError: If the quiver has an oriented cycle
        GlobalDimensionExceededError: If some simple has projective dimension above two
        PreconditionError: If the number of names does not match the relation system
    """
    if not c.quiver.is_acyclic():
        raise NotTriangularError(f"quiver of {c.name} has an oriented cycle")
    if check_global_dimension:
        certificate = global_dimension_le(c, 2)
        if not certificate:
            raise GlobalDimensionExceededError(2, certificate.witness)

    system = list(c.minimal_relation_system())
    names = list(new_arrow_names) if new_arrow_names else [f"new{i + 1}" for i in range(len(system))]
    if len(names) != len(system):
        raise PreconditionError(f"{len(names)} new arrow names for {len(system)} minimal relations")

    new_arrows = [Arrow(name, rel.target, rel.source) for name, rel in zip(names, system)]
    quiver = c.quiver.with_arrows(new_arrows)
    relation_of = {a.name: rel for a, rel in zip(new_arrows, system)}

    terms = []
    for a, rel in zip(new_arrows, system):
        for p, coeff in rel.element.items():
            terms.append((coeff, list(p.arrows) + [a.name]))
    potential = Potential.from_terms(quiver, terms, c.field)

    generators = [d for d in (potential.derivative(a.name) for a in quiver.arrows) if not d.is_zero()]
    generators += square_of_new_arrows(quiver, c.quiver, names, c.field)
    extended = BoundAlgebra(quiver, generators, field=c.field, name=f"{c.name}~", length_cap=c.length_cap)

    new_set = set(names)
    e_basis = [p for p in extended.basis if p.count_in(new_set) == 1]
    re = RelationExtension(base=c, quiver=quiver, new_arrows=new_arrows, relation_of=relation_of,
                           potential=potential, extended=extended, e_basis=e_basis)
    re.check_invariants()
    logger.info(f"relation extension of {c.name}: {len(new_arrows)} new arrows, W = {potential}, "
                f"dim E = {re.e_dim}, dim {extended.name} = {extended.dim}")
    return re
