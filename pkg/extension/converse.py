"""
From Bimodule Splits back to Potentials and Projectives

Given a direct bimodule split E = E' + E'', try to recover the potential
split by assigning each new arrow to the summand containing its class, and
test whether the split is induced by splits of the projectives and
injectives. Failures are results carrying a witness, never exceptions.
"""

import logging
from dataclasses import dataclass, field as dc_field
from typing import List, Optional, Tuple, Union

from errors import PreconditionError
from extension.bimodule import Bimodule, check_split, partial_bimodule_of
from extension.relation_extension import RelationExtension
from potential.potential import Potential, is_direct_decomposition
from quiver.quiver import chordless_cycles

logger = logging.getLogger(__name__)


@dataclass
class PotentialSplit:
    first: Potential
    second: Potential


@dataclass
class Obstruction:
    """No potential split induces the bimodule split; arrow names the offending new arrow if any."""

    arrow: Optional[str]
    reason: str


def _require_direct(extension: RelationExtension, e1: Bimodule, e2: Bimodule) -> None:
    split = check_split(e1, e2)
    if not split.is_direct:
        raise PreconditionError(f"bimodules do not split E directly (intersection {split.intersection_dim}, "
                                f"sum {split.sum_dim} of {extension.e_dim})")


def potential_split_from_bimodule(extension: RelationExtension, e1: Bimodule,
                                  e2: Bimodule) -> Union[PotentialSplit, Obstruction]:
    """
    Recover W = W' + W'' from E = e1 + e2.

    Raises:
        PreconditionError: If e1 and e2 do not form a direct split of E
    """
    _require_direct(extension, e1, e2)
    w = extension.potential
    side = {}
    for name in extension.new_arrow_names:
        arrow_class = extension.extended.arrow(name)
        if e1.contains(arrow_class):
            side[name] = 1
        elif e2.contains(arrow_class):
            side[name] = 2
        else:
            logger.warning(f"class of new arrow {name} lies in neither summand")
            return Obstruction(name, f"class of {name} is split across both summands")
    first, second = [], []
    for cycle in w.cycles():
        owners = {side[a] for a in cycle.arrows if a in side}
        (first if owners == {1} else second).append(cycle)
    w1, w2 = w.restrict(first), w.restrict(second)
    if not is_direct_decomposition(w, w1, w2):
        logger.warning("arrow assignment does not give a direct potential split")
        return Obstruction(None, "assignment of new arrows splits a dependency class of W")
    if partial_bimodule_of(extension, w1) != e1 or partial_bimodule_of(extension, w2) != e2:
        logger.warning("recovered potential split induces other bimodules")
        return Obstruction(None, "partial bimodules of the recovered split differ from the given summands")
    return PotentialSplit(w1, w2)


@dataclass
class ProjectiveInjectiveSplit:
    """Vertex partitions P' / P'' and I' / I'', or a witness pair (x, y) where both summands live."""

    succeeded: bool
    projectives: Tuple[List[str], List[str]] = dc_field(default_factory=lambda: ([], []))
    injectives: Tuple[List[str], List[str]] = dc_field(default_factory=lambda: ([], []))
    witness: Optional[Tuple[str, str]] = None

    def __bool__(self) -> bool:
        return self.succeeded


def projective_injective_split(extension: RelationExtension, e1: Bimodule,
                               e2: Bimodule) -> ProjectiveInjectiveSplit:
    """
    Decide whether each graded piece e_x E e_y belongs to a single summand.

    On success the projective P_x goes with the summand owning the pieces
    starting at x, and the injective I_y with the summand owning the pieces
    ending at y; vertices touching neither go to the first part.

    Raises:
        PreconditionError: If e1 and e2 do not form a direct split of E
    """
    _require_direct(extension, e1, e2)
    g1, g2 = e1.graded_dims(), e2.graded_dims()
    vertices = extension.base.vertices
    for x in vertices:
        for y in vertices:
            if g1.get((x, y)) and g2.get((x, y)):
                logger.info(f"graded piece ({x}, {y}) meets both summands")
                return ProjectiveInjectiveSplit(False, witness=(x, y))
    second_p = sorted({x for (x, _) in g2}, key=vertices.index)
    second_i = sorted({y for (_, y) in g2}, key=vertices.index)
    projectives = ([v for v in vertices if v not in second_p], second_p)
    injectives = ([v for v in vertices if v not in second_i], second_i)
    return ProjectiveInjectiveSplit(True, projectives=projectives, injectives=injectives)


def is_cyclically_oriented_extension(extension: RelationExtension) -> bool:
    """True iff every chordless cycle of the extended quiver is oriented."""
    return all(c.oriented for c in chordless_cycles(extension.quiver))
