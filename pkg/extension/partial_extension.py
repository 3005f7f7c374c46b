"""
Partial Relation Extensions

Keeping the new arrows of some dependency classes of W and dropping the rest
gives an algebra B between C and its relation extension. B is bound by the
cyclic derivatives of the kept part W', the relations of the dropped arrows
and the square of the ideal of kept arrows.
"""

import logging
from dataclasses import dataclass
from typing import Dict, Iterable, List, Tuple

from algebra.bound_algebra import BoundAlgebra
from algebra.element import AlgebraElement
from errors import KeepNotAlignedError, PreconditionError
from extension.bimodule import Bimodule, partial_bimodule_of
from extension.relation_extension import RelationExtension, square_of_new_arrows
from extension.surjection import AlgebraSurjection, quotient_surjection
from potential.potential import Potential, dependency_components

logger = logging.getLogger(__name__)


@dataclass
class PartialExtension:
    extension: RelationExtension
    keep: Tuple[str, ...]
    dropped: Tuple[str, ...]
    kept_potential: Potential
    dropped_potential: Potential
    algebra: BoundAlgebra
    kept_bimodule: Bimodule
    dropped_bimodule: Bimodule

    def from_extended(self) -> AlgebraSurjection:
        """C~ -> B killing the dropped arrows."""
        return quotient_surjection(self.extension.extended, self.algebra)

    def to_base(self) -> AlgebraSurjection:
        """B -> C killing the kept arrows."""
        return quotient_surjection(self.algebra, self.extension.base)

    def dimension_ok(self) -> bool:
        return self.algebra.dim == self.extension.base.dim + self.kept_bimodule.dim

    def to_json(self) -> Dict:
        b = self.algebra
        return {
            "schema": "relext.partial/1",
            "algebra": b.name,
            "keep": list(self.keep),
            "dropped": list(self.dropped),
            "kept_potential": self.kept_potential.to_text(),
            "vertices": list(b.vertices),
            "arrows": [[a.name, a.source, a.target] for a in b.quiver.arrows],
            "relations": [r.element.to_text() for r in b.minimal_relation_system()],
            "dim": b.dim,
            "dim_base": self.extension.base.dim,
            "dim_kept_bimodule": self.kept_bimodule.dim,
            "dimension_ok": self.dimension_ok(),
        }


def component_arrow_sets(extension: RelationExtension) -> List[frozenset]:
    """New arrows of each dependency class of W."""
    new = set(extension.new_arrow_names)
    return [frozenset(arrows & new) for arrows in dependency_components(extension.potential).arrow_partition]


def build_partial_extension(extension: RelationExtension, keep: Iterable[str]) -> PartialExtension:
    """
    Build B for a kept set of new arrows.

    Raises:
        PreconditionError: If keep names something other than new arrows
        KeepNotAlignedError: If keep cuts through a dependency class of W
    """
    keep_set = set(keep)
    unknown = keep_set - set(extension.new_arrow_names)
    if unknown:
        raise PreconditionError(f"{sorted(unknown)} are not new arrows of the relation extension")
    for arrows in component_arrow_sets(extension):
        if arrows & keep_set and not arrows <= keep_set:
            raise KeepNotAlignedError(f"kept arrows {sorted(keep_set)} cut the class {sorted(arrows)} of W")
    kept = tuple(a for a in extension.new_arrow_names if a in keep_set)
    dropped = tuple(a for a in extension.new_arrow_names if a not in keep_set)

    w = extension.potential
    kept_cycles = [c for c in w.cycles() if any(a in keep_set for a in c.arrows)]
    dropped_cycles = [c for c in w.cycles() if c not in set(kept_cycles)]
    w_kept, w_dropped = w.restrict(kept_cycles), w.restrict(dropped_cycles)

    quiver = extension.quiver.without_arrows(dropped)
    field = extension.base.field
    kept_in_quiver = Potential(quiver, {c: v for c, v in w_kept.items()}, field)
    relations: List[AlgebraElement] = []
    for a in quiver.arrows:
        d = kept_in_quiver.derivative(a.name)
        if not d.is_zero():
            relations.append(d)
    for name in dropped:
        relations.append(extension.relation_of[name].element.with_quiver(quiver))
    relations += square_of_new_arrows(quiver, extension.base.quiver, kept, field)

    suffix = "+".join(kept) if kept else "none"
    b = BoundAlgebra(quiver, relations, field=field, name=f"{extension.base.name}[{suffix}]",
                     length_cap=extension.base.length_cap)
    pe = PartialExtension(extension=extension, keep=kept, dropped=dropped, kept_potential=w_kept,
                          dropped_potential=w_dropped, algebra=b,
                          kept_bimodule=partial_bimodule_of(extension, w_kept),
                          dropped_bimodule=partial_bimodule_of(extension, w_dropped))
    if not pe.dimension_ok():
        logger.error(f"dim {b.name} = {b.dim} but dim C + dim E' = "
                     f"{extension.base.dim} + {pe.kept_bimodule.dim}")
    logger.info(f"partial extension {b.name}: dim {b.dim}, {len(b.minimal_relation_system())} minimal relations")
    return pe


@dataclass
class TransitivityReport:
    holds: bool
    dimension_ok: bool
    failures: List[Tuple[str, str]]

    def __bool__(self) -> bool:
        return self.holds


def check_trivial_extension_transitivity(extension: RelationExtension, pe: PartialExtension) -> TransitivityReport:
    """
    Compare the multiplication of C~ with that of the trivial extension of B by E''.

    A basis path p of C~ goes to (0, p) when it carries a dropped arrow and to
    (class of p in B, 0) otherwise; the map must be multiplicative on all
    pairs of basis paths.
    """
    c_tilde, b = extension.extended, pe.algebra
    dropped = set(pe.dropped)

    def phi(x: AlgebraElement) -> Tuple[AlgebraElement, AlgebraElement]:
        in_b = x.restrict(lambda p: not p.contains_any(dropped)).with_quiver(b.quiver)
        in_e = x.restrict(lambda p: p.contains_any(dropped))
        return b.normal_form(in_b), c_tilde.normal_form(in_e)

    def lift(y: AlgebraElement) -> AlgebraElement:
        return y.with_quiver(c_tilde.quiver)

    def product(left, right):
        b1, e1 = left
        b2, e2 = right
        return b.multiply(b1, b2), c_tilde.normal_form(lift(b1) * e2 + e1 * lift(b2))

    images = {p: phi(c_tilde.element(p)) for p in c_tilde.basis}
    failures = []
    for p in c_tilde.basis:
        for q in c_tilde.basis:
            if p.target != q.source:
                continue
            expected = phi(c_tilde.multiply(c_tilde.element(p), c_tilde.element(q)))
            if product(images[p], images[q]) != expected:
                failures.append((str(p), str(q)))
    dimension_ok = c_tilde.dim == b.dim + pe.dropped_bimodule.dim
    holds = not failures and dimension_ok
    if not holds:
        logger.error(f"transitivity fails for {b.name}: {len(failures)} products differ, dimension ok {dimension_ok}")
    return TransitivityReport(holds=holds, dimension_ok=dimension_ok, failures=failures)
