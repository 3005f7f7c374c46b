"""
Local and Complete Slices

A set of indecomposables in a knitted AR quiver is a local slice when it is
a presection, sectionally convex and has as many members as the algebra has
vertices. Complete slices of a tilted algebra are the local slices with
Hom(X, tau Y) = 0 for all members X, Y. Complete slices of C pulled back
along a surjection A -> C are checked to be local slices of A.
"""

import itertools
import logging
from collections import deque
from dataclasses import dataclass, field as dc_field
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from config import DEFAULT_SLICE_SEARCH_CAP
from errors import ModuleNotFoundInRegistryError, PreconditionError, SearchCapExceededError
from extension.surjection import AlgebraSurjection
from repmod.homs import hom_space
from repmod.knitting import ARQuiver
from repmod.restriction import restrict_along_surjection

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SliceCandidate:
    ar: ARQuiver
    members: FrozenSet[int]

    def __post_init__(self):
        unknown = [i for i in self.members if not 0 <= i < len(self.ar)]
        if unknown:
            raise PreconditionError(f"ids {sorted(unknown)} are not registered in the AR quiver")

    @classmethod
    def of(cls, ar: ARQuiver, ids: Iterable[int]) -> "SliceCandidate":
        return cls(ar, frozenset(ids))

    @classmethod
    def from_dimension_vectors(cls, ar: ARQuiver, vectors: Sequence[Sequence[int]]) -> "SliceCandidate":
        """
        Members given by dimension vectors; a repeated vector picks the next unused module with it.

        Raises:
            ModuleNotFoundInRegistryError: If some vector matches no unused module
        """
        chosen: List[int] = []
        for vector in vectors:
            target = tuple(int(d) for d in vector)
            match = next((n.id for n in ar.nodes if n.dimension_vector == target and n.id not in chosen), None)
            if match is None:
                raise ModuleNotFoundInRegistryError(f"no module with dimension vector {target} in {ar.algebra.name}")
            chosen.append(match)
        return cls.of(ar, chosen)

    def sorted_ids(self) -> List[int]:
        return sorted(self.members)

    def dimension_vectors(self) -> List[Tuple[int, ...]]:
        return sorted(self.ar.nodes[i].dimension_vector for i in self.members)

    def __len__(self) -> int:
        return len(self.members)


@dataclass
class Verdict:
    holds: bool
    witness: Optional[Tuple] = None

    def __bool__(self) -> bool:
        return self.holds


@dataclass
class SliceReport:
    """Verdicts per axiom with witnesses for every failure."""

    candidate: SliceCandidate
    presection: Verdict
    convex: Verdict
    cardinality: Verdict
    hom_condition: Optional[Verdict] = None
    notes: List[str] = dc_field(default_factory=list)

    @property
    def is_local_slice(self) -> bool:
        return bool(self.presection and self.convex and self.cardinality)

    @property
    def is_complete_slice(self) -> bool:
        return self.is_local_slice and bool(self.hom_condition)

    def __bool__(self) -> bool:
        if self.hom_condition is None:
            return self.is_local_slice
        return self.is_complete_slice

    def to_json(self) -> Dict:
        ar = self.candidate.ar

        def labels(witness):
            if witness is None:
                return None
            return [ar.nodes[i].label() if isinstance(i, int) else i for i in witness]

        report = {
            "algebra": ar.algebra.name,
            "members": [list(v) for v in self.candidate.dimension_vectors()],
            "presection": {"holds": self.presection.holds, "witness": labels(self.presection.witness)},
            "sectionally_convex": {"holds": self.convex.holds, "witness": labels(self.convex.witness)},
            "cardinality": {"holds": self.cardinality.holds, "witness": self.cardinality.witness},
            "local_slice": self.is_local_slice,
        }
        if self.hom_condition is not None:
            report["hom_condition"] = {"holds": self.hom_condition.holds,
                                       "witness": labels(self.hom_condition.witness)}
            report["complete_slice"] = self.is_complete_slice
        if self.notes:
            report["notes"] = list(self.notes)
        return report

    def to_dot(self) -> str:
        return self.candidate.ar.to_dot(highlight=self.candidate.members)


def is_presection(s: SliceCandidate) -> Verdict:
    """
    Both presection clauses over every irreducible map touching the candidate.

    Returns:
        Verdict whose witness is (clause, L, M) for the first violated map L -> M
    """
    ar, members = s.ar, s.members
    for (left, right) in sorted(ar.arrows):
        if left in members and right not in members:
            tau_right = ar.nodes[right].tau
            if tau_right is None or tau_right not in members:
                return Verdict(False, ("a", left, right))
        if right in members and left not in members:
            inverse_left = ar.nodes[left].tau_inverse
            if inverse_left is None or inverse_left not in members:
                return Verdict(False, ("b", left, right))
    return Verdict(True)


def _sectional_steps(ar: ARQuiver, prev: Optional[int], cur: int) -> List[int]:
    steps = [t for t, _ in ar.successors(cur)]
    if prev is None:
        return steps
    return [t for t in steps if ar.nodes[t].tau != prev]


def is_sectionally_convex(s: SliceCandidate) -> Verdict:
    """
    Every sectional path between members stays inside the candidate.

    The search runs over states (previous module, current module, left the
    candidate yet); reaching a member in a state that has left it is a
    violation, reported as the module path.
    """
    ar, members = s.ar, s.members
    for start in sorted(members):
        origin = (None, start, False)
        parent: Dict[Tuple, Optional[Tuple]] = {origin: None}
        queue = deque([origin])
        while queue:
            state = queue.popleft()
            prev, cur, outside = state
            for nxt in _sectional_steps(ar, prev, cur):
                inside = nxt in members
                if inside and outside:
                    path = [nxt]
                    back: Optional[Tuple] = state
                    while back is not None:
                        path.append(back[1])
                        back = parent[back]
                    return Verdict(False, tuple(reversed(path)))
                following = (cur, nxt, outside or not inside)
                if following not in parent:
                    parent[following] = state
                    queue.append(following)
    return Verdict(True)


def _cardinality(s: SliceCandidate) -> Verdict:
    n = len(s.ar.algebra.vertices)
    if len(s) == n:
        return Verdict(True)
    return Verdict(False, (len(s), n))


def is_local_slice(s: SliceCandidate) -> SliceReport:
    """Presection, sectional convexity and cardinality, each with its own verdict."""
    report = SliceReport(candidate=s, presection=is_presection(s), convex=is_sectionally_convex(s),
                         cardinality=_cardinality(s))
    logger.debug(f"{s.dimension_vectors()} local slice: {report.is_local_slice}")
    return report


class _HomOracle:
    """Cached dim Hom(X, tau Y) over registry ids."""

    def __init__(self, ar: ARQuiver):
        self.ar = ar
        self._dims: Dict[Tuple[int, int], int] = {}

    def vanishes(self, x: int, y: int) -> bool:
        tau_y = self.ar.nodes[y].tau
        if tau_y is None:
            return True
        key = (x, tau_y)
        if key not in self._dims:
            self._dims[key] = hom_space(self.ar.nodes[x].module, self.ar.nodes[tau_y].module).dim
        return self._dims[key] == 0


def hom_condition(s: SliceCandidate, oracle: Optional[_HomOracle] = None) -> Verdict:
    """Hom(X, tau Y) = 0 for all members; the witness is the first offending pair (X, Y)."""
    oracle = oracle or _HomOracle(s.ar)
    for x in s.sorted_ids():
        for y in s.sorted_ids():
            if not oracle.vanishes(x, y):
                return Verdict(False, (x, y))
    return Verdict(True)


def tau_orbits(ar: ARQuiver) -> List[List[int]]:
    return ar.tau_orbits()


def _candidate_sets(ar: ARQuiver, n: int) -> Iterable[Tuple[int, ...]]:
    orbits = tau_orbits(ar)
    if len(orbits) == n:
        logger.debug(f"{ar.algebra.name}: choosing one module in each of {n} tau orbits")
        return itertools.product(*orbits)
    logger.debug(f"{ar.algebra.name}: {len(orbits)} tau orbits for {n} vertices, searching all subsets")
    return itertools.combinations(range(len(ar)), n)


def enumerate_complete_slices(ar: ARQuiver, cap: int = DEFAULT_SLICE_SEARCH_CAP) -> List[SliceReport]:
    """
    All complete slices of a knitted AR quiver.

    Args:
        ar: AR quiver of a representation-finite algebra
        cap: Largest number of candidate sets examined

    Returns:
        Reports of the complete slices, ordered by sorted member ids

    Raises:
        SearchCapExceededError: If more than cap candidates are examined
    """
    n = len(ar.algebra.vertices)
    oracle = _HomOracle(ar)
    found: List[SliceReport] = []
    seen = set()
    for examined, ids in enumerate(_candidate_sets(ar, n), start=1):
        if examined > cap:
            raise SearchCapExceededError(f"slice search over {ar.algebra.name} passed {cap} candidates")
        members = frozenset(ids)
        if len(members) != n or members in seen:
            continue
        seen.add(members)
        candidate = SliceCandidate(ar, members)
        presection = is_presection(candidate)
        if not presection:
            continue
        report = is_local_slice(candidate)
        if not report.is_local_slice:
            continue
        report.hom_condition = hom_condition(candidate, oracle)
        if report.is_complete_slice:
            found.append(report)
    found.sort(key=lambda r: r.candidate.sorted_ids())
    logger.info(f"{ar.algebra.name}: {len(found)} complete slices")
    return found


@dataclass
class EmbeddingReport:
    """A complete slice of C located in the AR quiver of A, with the tau comparisons on its modules."""

    source_slice: SliceCandidate
    image: SliceCandidate
    local: SliceReport
    tau_agrees: bool
    projectivity_transfers: bool
    mismatches: List[str] = dc_field(default_factory=list)

    def __bool__(self) -> bool:
        return self.local.is_local_slice and self.tau_agrees and self.projectivity_transfers

    def to_json(self) -> Dict:
        return {
            "slice": [list(v) for v in self.source_slice.dimension_vectors()],
            "local_slice": self.local.to_json(),
            "tau_agrees": self.tau_agrees,
            "projectivity_transfers": self.projectivity_transfers,
            "mismatches": list(self.mismatches),
        }


def _locate(ar_a: ARQuiver, module, to_base: AlgebraSurjection) -> int:
    pulled = restrict_along_surjection(module, to_base)
    found = ar_a.find(pulled)
    if found is None:
        raise ModuleNotFoundInRegistryError(f"module {module.dimension_vector()} of {to_base.target.name} "
                                            f"has no counterpart in the AR quiver of {ar_a.algebra.name}")
    return found


def embed_and_verify(slices: Sequence[SliceReport], to_base: AlgebraSurjection, ar_a: ARQuiver,
                     from_extended: Optional[AlgebraSurjection] = None) -> List[EmbeddingReport]:
    """
    Pull complete slices of C back along A -> C and check them in the AR quiver of A.

    Args:
        slices: Complete slices of C
        to_base: The surjection A -> C
        ar_a: Knitted AR quiver of A
        from_extended: The surjection from the relation extension onto A, validated when given

    Returns:
        One report per slice

    Raises:
        PreconditionError: If the chain is not made of valid surjections matching the AR quivers
        ModuleNotFoundInRegistryError: If a pulled back module is missing from the AR quiver of A
    """
    if to_base.source is not ar_a.algebra:
        raise PreconditionError(f"surjection starts at {to_base.source.name}, AR quiver is of {ar_a.algebra.name}")
    for surjection in filter(None, (from_extended, to_base)):
        if not surjection.is_valid():
            raise PreconditionError(f"{surjection.source.name} -> {surjection.target.name} is not a surjection")
    if from_extended is not None and from_extended.target is not to_base.source:
        raise PreconditionError("surjection chain does not compose")

    reports = []
    for s in slices:
        ar_c = s.candidate.ar
        if ar_c.algebra is not to_base.target:
            raise PreconditionError(f"slice lives over {ar_c.algebra.name}, surjection ends at {to_base.target.name}")
        located = {i: _locate(ar_a, ar_c.nodes[i].module, to_base) for i in s.candidate.sorted_ids()}
        image = SliceCandidate.of(ar_a, located.values())
        mismatches = []
        projectivity = True
        tau_ok = True
        for i, j in located.items():
            node_c, node_a = ar_c.nodes[i], ar_a.nodes[j]
            label = node_c.label()
            if node_c.projective:
                if not node_a.projective:
                    projectivity = False
                    mismatches.append(f"{label} is projective over {ar_c.algebra.name} only")
            elif node_a.tau is None or _locate(ar_a, ar_c.nodes[node_c.tau].module, to_base) != node_a.tau:
                tau_ok = False
                mismatches.append(f"tau of {label} differs")
            if node_c.injective:
                if not node_a.injective:
                    projectivity = False
                    mismatches.append(f"{label} is injective over {ar_c.algebra.name} only")
            elif node_a.tau_inverse is None or \
                    _locate(ar_a, ar_c.nodes[node_c.tau_inverse].module, to_base) != node_a.tau_inverse:
                tau_ok = False
                mismatches.append(f"tau inverse of {label} differs")
        local = is_local_slice(image)
        report = EmbeddingReport(source_slice=s.candidate, image=image, local=local, tau_agrees=tau_ok,
                                 projectivity_transfers=projectivity, mismatches=mismatches)
        if not report:
            logger.error(f"slice {s.candidate.dimension_vectors()} of {ar_c.algebra.name} does not embed as a "
                         f"local slice of {ar_a.algebra.name}: {mismatches or 'axioms fail'}")
        reports.append(report)
    logger.info(f"embedded {len(reports)} slices of {to_base.target.name} into {ar_a.algebra.name}")
    return reports


def slices_to_json(ar: ARQuiver, reports: Sequence) -> Dict:
    return {
        "schema": "relext.slices/1",
        "algebra": ar.algebra.name,
        "count": len(reports),
        "slices": [r.to_json() for r in reports],
    }
