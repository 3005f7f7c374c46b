"""
Potentials

Linear combinations of oriented cycles up to cyclic equivalence, their cyclic
derivatives, the dependency relation between cycles and direct decompositions.
"""

import itertools
import logging
from dataclasses import dataclass, field as dc_field
from typing import Dict, FrozenSet, Iterable, List, Mapping, Sequence, Tuple

from networkx.utils import UnionFind

from algebra.element import AlgebraElement
from errors import PreconditionError, SearchCapExceededError
from exactlin.field import QQ, Field, Scalar
from quiver.path import Cycle, Path
from quiver.quiver import Quiver

logger = logging.getLogger(__name__)

DEFAULT_COARSENING_CAP = 2 ** 12


class Potential:
    """A potential W on a quiver, stored with canonically rotated cycles."""

    def __init__(self, quiver: Quiver, terms: Mapping[Cycle, object] = None, field: Field = QQ):
        self.quiver = quiver
        self.field = field
        clean: Dict[Cycle, Scalar] = {}
        for cycle, coeff in (terms or {}).items():
            c = field(coeff)
            if c != 0:
                clean[cycle] = c
        self._terms = clean

    @classmethod
    def from_terms(cls, quiver: Quiver, terms: Iterable[Tuple[object, Sequence[str]]],
                   field: Field = QQ) -> "Potential":
        """
        Build a potential from (coefficient, arrow word) pairs.

        Raises:
            PreconditionError: If a word is not a closed path
        """
        acc: Dict[Cycle, Scalar] = {}
        for coeff, word in terms:
            path = Path.from_arrows(quiver, list(word))
            if not path.is_closed():
                raise PreconditionError(f"potential term {path} is not a closed path")
            cycle = Cycle.from_arrows(word)
            acc[cycle] = acc.get(cycle, field.zero) + field(coeff)
        return cls(quiver, acc, field)

    @classmethod
    def zero(cls, quiver: Quiver, field: Field = QQ) -> "Potential":
        return cls(quiver, {}, field)

    def cycles(self) -> List[Cycle]:
        return sorted(self._terms, key=lambda c: c.arrows)

    def items(self) -> List[Tuple[Cycle, Scalar]]:
        return [(c, self._terms[c]) for c in self.cycles()]

    def coefficient(self, cycle: Cycle) -> Scalar:
        return self._terms.get(cycle, self.field.zero)

    def is_zero(self) -> bool:
        return not self._terms

    def arrows(self) -> FrozenSet[str]:
        return frozenset(a for c in self._terms for a in c.arrows)

    def restrict(self, cycles: Iterable[Cycle]) -> "Potential":
        keep = set(cycles)
        return Potential(self.quiver, {c: v for c, v in self._terms.items() if c in keep}, self.field)

    def __add__(self, other: "Potential") -> "Potential":
        terms = dict(self._terms)
        for c, v in other._terms.items():
            terms[c] = terms.get(c, self.field.zero) + v
        return Potential(self.quiver, terms, self.field)

    def __sub__(self, other: "Potential") -> "Potential":
        return self + other.scale(-1)

    def scale(self, c: object) -> "Potential":
        c = self.field(c)
        return Potential(self.quiver, {k: c * v for k, v in self._terms.items()}, self.field)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Potential):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def derivative(self, arrow: str) -> AlgebraElement:
        return cyclic_derivative(self, arrow)

    def to_text(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for i, (cycle, c) in enumerate(self.items()):
            negative = self.field.characteristic == 0 and c < 0
            magnitude = -c if negative else c
            body = str(cycle) if magnitude == 1 else f"{magnitude}*{cycle}"
            if i == 0:
                parts.append(f"-{body}" if negative else body)
            else:
                parts.append(f"- {body}" if negative else f"+ {body}")
        return " ".join(parts)

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"Potential({self.to_text()})"


def derivative_of_terms(quiver: Quiver, terms: Iterable[Tuple[object, Sequence[str]]], arrow: str,
                        field: Field = QQ) -> AlgebraElement:
    """
    Cyclic derivative evaluated directly on raw, unrotated cycle words.

    For a word g1...gm the derivative sums g_{i+1}...g_m g_1...g_{i-1} over all
    positions i with g_i = arrow.
    """
    quiver.arrow(arrow)
    result = AlgebraElement.zero(quiver, field)
    for coeff, word in terms:
        word = tuple(word)
        for i, a in enumerate(word):
            if a != arrow:
                continue
            rest = word[i + 1:] + word[:i]
            if rest:
                path = Path.from_arrows(quiver, list(rest))
            else:
                path = Path.trivial(quiver.arrow(arrow).target)
            result = result + AlgebraElement(quiver, {path: coeff}, field)
    return result


def cyclic_derivative(w: Potential, arrow: str) -> AlgebraElement:
    """The cyclic derivative of a potential with respect to an arrow."""
    return derivative_of_terms(w.quiver, [(c, cycle.arrows) for cycle, c in w.items()], arrow, w.field)


def derivative_cyclic_invariance_check(w: Potential, rotation: int) -> bool:
    """
    Compare derivatives of w with derivatives evaluated on every term rotated by k positions.

    Args:
        w: The potential
        rotation: Rotation offset applied to each cycle word (taken modulo its length)
    """
    rotated = []
    for cycle, c in w.items():
        k = rotation % len(cycle.arrows)
        rotated.append((c, cycle.arrows[k:] + cycle.arrows[:k]))
    for arrow in w.quiver.arrows:
        if derivative_of_terms(w.quiver, rotated, arrow.name, w.field) != cyclic_derivative(w, arrow.name):
            logger.error(f"cyclic derivative with respect to {arrow.name} changed under rotation {rotation}")
            return False
    return True


@dataclass
class PotentialDecomposition:
    """The finest direct decomposition of a potential."""

    potential: Potential
    summands: List[Potential]
    arrow_partition: List[FrozenSet[str]] = dc_field(default_factory=list)

    def __len__(self) -> int:
        return len(self.summands)

    def component_of_arrow(self, arrow: str) -> int:
        for i, arrows in enumerate(self.arrow_partition):
            if arrow in arrows:
                return i
        raise PreconditionError(f"arrow {arrow!r} does not occur in the potential")


def dependency_components(w: Potential) -> PotentialDecomposition:
    """
    Split the cycles of w into classes of the transitive closure of arrow sharing.

    Returns:
        PotentialDecomposition with one summand per class, ordered by smallest cycle
    """
    cycles = w.cycles()
    groups = UnionFind(cycles)
    first_cycle: Dict[str, Cycle] = {}
    for cycle in cycles:
        for arrow in cycle.arrows:
            if arrow in first_cycle:
                groups.union(first_cycle[arrow], cycle)
            else:
                first_cycle[arrow] = cycle
    classes = [sorted(group, key=lambda c: c.arrows) for group in groups.to_sets()]
    classes.sort(key=lambda group: group[0].arrows)
    summands = [w.restrict(group) for group in classes]
    partition = [s.arrows() for s in summands]
    logger.debug(f"potential {w} has {len(summands)} dependency components")
    return PotentialDecomposition(potential=w, summands=summands, arrow_partition=partition)


def is_direct_decomposition(w: Potential, w1: Potential, w2: Potential) -> bool:
    """True iff w = w1 + w2 and no cycle of w1 is dependent within w on a cycle of w2."""
    if w1 + w2 != w:
        return False
    support1, support2 = set(w1.cycles()), set(w2.cycles())
    if support1 & support2:
        return False
    for component in dependency_components(w).summands:
        members = set(component.cycles())
        if members & support1 and members & support2:
            return False
    return True


def coarsenings(decomposition: PotentialDecomposition,
                cap: int = DEFAULT_COARSENING_CAP) -> List[Tuple[Potential, Potential]]:
    """
    All two-part direct splits (w1, w2) obtained by grouping components.

    The first component always goes to w1, so each unordered split appears once;
    the trivial split (w, 0) comes first.

    Raises:
        SearchCapExceededError: If there are more than cap splits
    """
    k = len(decomposition.summands)
    if k == 0:
        zero = Potential.zero(decomposition.potential.quiver, decomposition.potential.field)
        return [(zero, zero)]
    total = 2 ** (k - 1)
    if total > cap:
        raise SearchCapExceededError(f"{total} coarsenings exceed the cap {cap}")
    zero = Potential.zero(decomposition.potential.quiver, decomposition.potential.field)
    splits = []
    for mask in itertools.product((True, False), repeat=k - 1):
        choice = (True,) + mask
        w1, w2 = zero, zero
        for in_first, summand in zip(choice, decomposition.summands):
            if in_first:
                w1 = w1 + summand
            else:
                w2 = w2 + summand
        splits.append((w1, w2))
    return splits
