"""
Auslander-Reiten Quiver Knitting

The registry is seeded with the indecomposable projectives and the summands
of their radicals (arrows rad P -> P), and dually with the injectives and
the summands of I / soc I. For every registered non-injective module M the
almost split sequence 0 -> M -> E -> tau^-1 M -> 0 is built; the summands of
E are the middle terms of the mesh and enter the registry, together with
tau^-1 M. Every registered non-projective module is also translated by tau,
so its own mesh gets built. Modules are identified up to isomorphism, and
irreducible maps recorded by two meshes must carry the same multiplicity.
"""

import logging
from collections import deque
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Tuple

import numpy as np

from algebra.bound_algebra import BoundAlgebra
from errors import ArrowMultiplicityConflictError, CapExceededError, IncompleteKnitError
from repmod.almost_split import almost_split_sequence
from repmod.decompose import decompose, isomorphic_indecomposables
from repmod.representation import Representation, injective_rep, projective_rep
from repmod.resolution import TranslateMarker, radical, tau, tau_inverse

logger = logging.getLogger(__name__)

DEFAULT_MODULE_CAP = 512


@dataclass
class ARNode:
    id: int
    module: Representation
    projective: bool = False
    injective: bool = False
    tau: Optional[int] = None
    tau_inverse: Optional[int] = None

    @property
    def dimension_vector(self) -> Tuple[int, ...]:
        return self.module.dimension_vector()

    def label(self) -> str:
        return ",".join(str(d) for d in self.dimension_vector)


@dataclass
class MeshViolation:
    node: int
    expected: Tuple[int, ...]
    found: Tuple[int, ...]


class ARQuiver:
    """Registry of indecomposables with irreducible maps and tau links."""

    def __init__(self, algebra: BoundAlgebra):
        self.algebra = algebra
        self.nodes: List[ARNode] = []
        self.arrows: Dict[Tuple[int, int], int] = {}

    def __len__(self) -> int:
        return len(self.nodes)

    def __iter__(self):
        return iter(self.nodes)

    def find(self, module: Representation) -> Optional[int]:
        """Registry id of an indecomposable isomorphic to module, if any."""
        dim = module.dimension_vector()
        for node in self.nodes:
            if node.dimension_vector == dim and isomorphic_indecomposables(node.module, module):
                return node.id
        return None

    def add(self, module: Representation) -> Tuple[int, bool]:
        found = self.find(module)
        if found is not None:
            return found, False
        node = ARNode(id=len(self.nodes), module=module)
        self.nodes.append(node)
        return node.id, True

    def merge_arrow(self, source: int, target: int, multiplicity: int) -> bool:
        """
        Record an irreducible map; returns True when the quiver changed.

        Raises:
            ArrowMultiplicityConflictError: If the map is already recorded with another multiplicity
        """
        current = self.arrows.get((source, target))
        if current == multiplicity:
            return False
        if current is not None:
            raise ArrowMultiplicityConflictError(self.nodes[source].label(), self.nodes[target].label(),
                                                 current, multiplicity)
        self.arrows[(source, target)] = multiplicity
        return True

    def successors(self, i: int) -> List[Tuple[int, int]]:
        return sorted((t, m) for (s, t), m in self.arrows.items() if s == i)

    def predecessors(self, i: int) -> List[Tuple[int, int]]:
        return sorted((s, m) for (s, t), m in self.arrows.items() if t == i)

    def projectives(self) -> List[int]:
        return [n.id for n in self.nodes if n.projective]

    def injectives(self) -> List[int]:
        return [n.id for n in self.nodes if n.injective]

    def dimension_vectors(self) -> List[Tuple[int, ...]]:
        return [n.dimension_vector for n in self.nodes]

    def check_mesh_additivity(self) -> List[MeshViolation]:
        """Meshes where dim M + dim tau^-1 M differs from the sum over the middle terms."""
        violations = []
        for node in self.nodes:
            if node.tau_inverse is None:
                continue
            expected = node.module.dimension_array() + self.nodes[node.tau_inverse].module.dimension_array()
            middle = np.zeros_like(expected)
            for j, m in self.successors(node.id):
                middle = middle + m * self.nodes[j].module.dimension_array()
            if not np.array_equal(expected, middle):
                violations.append(MeshViolation(node.id, tuple(int(x) for x in expected),
                                                tuple(int(x) for x in middle)))
            elif self.successors(node.id) != self.predecessors(node.tau_inverse):
                violations.append(MeshViolation(node.id, tuple(int(x) for x in expected),
                                                tuple(int(x) for x in middle)))
        return violations

    def tau_orbits(self) -> List[List[int]]:
        """tau orbits, each listed from its tau-most module in the tau inverse direction."""
        seen = set()
        orbits = []
        for node in self.nodes:
            if node.id in seen:
                continue
            start = node.id
            visited = {start}
            while self.nodes[start].tau is not None and self.nodes[start].tau not in visited:
                start = self.nodes[start].tau
                visited.add(start)
            orbit, current = [], start
            while current is not None and current not in orbit:
                orbit.append(current)
                current = self.nodes[current].tau_inverse
            seen.update(orbit)
            orbits.append(orbit)
        return orbits

    def to_json(self) -> Dict:
        return {
            "schema": "relext.ar/1",
            "algebra": self.algebra.name,
            "modules": len(self.nodes),
            "nodes": [
                {
                    "id": n.id,
                    "dimension_vector": list(n.dimension_vector),
                    "projective": n.projective,
                    "injective": n.injective,
                    "tau": n.tau,
                    "tau_inverse": n.tau_inverse,
                }
                for n in self.nodes
            ],
            "arrows": [[s, t, m] for (s, t), m in sorted(self.arrows.items())],
        }

    def to_dot(self, highlight: Iterable[int] = ()) -> str:
        marked = set(highlight)
        lines = ["digraph AR {", "  rankdir=LR;"]
        for n in self.nodes:
            if n.projective and n.injective:
                shape = "hexagon"
            elif n.projective:
                shape = "box"
            elif n.injective:
                shape = "diamond"
            else:
                shape = "ellipse"
            extra = ' style=filled fillcolor="lightblue"' if n.id in marked else ""
            lines.append(f'  n{n.id} [label="{n.label()}" shape={shape}{extra}];')
        for (s, t), m in sorted(self.arrows.items()):
            label = f' [label="{m}"]' if m > 1 else ""
            lines.append(f"  n{s} -> n{t}{label};")
        for n in self.nodes:
            if n.tau is not None:
                lines.append(f"  n{n.id} -> n{n.tau} [style=dashed constraint=false];")
        lines.append("}")
        return "\n".join(lines) + "\n"


def _socle_quotient(module: Representation) -> Representation:
    return module.quotient(module.socle_subspaces())


def knit_ar_quiver(algebra: BoundAlgebra, module_cap: int = DEFAULT_MODULE_CAP) -> ARQuiver:
    """
    Knit the Auslander-Reiten quiver of a representation-finite algebra.

    Args:
        algebra: Finite dimensional algebra
        module_cap: Largest registry size before giving up

    Raises:
        CapExceededError: If more than module_cap iso-classes are registered
        ArrowMultiplicityConflictError: If two meshes disagree on an irreducible map
        IncompleteKnitError: If some mesh is not additive at termination
    """
    ar = ARQuiver(algebra)
    queue: deque = deque()

    def register(module: Representation) -> int:
        node_id, new = ar.add(module)
        if new:
            if len(ar) > module_cap:
                frontier = [ar.nodes[i].dimension_vector for i in queue]
                raise CapExceededError(module_cap, frontier)
            queue.append(node_id)
        return node_id

    for x in algebra.vertices:
        p = register(projective_rep(algebra, x))
        ar.nodes[p].projective = True
        for s in decompose(radical(ar.nodes[p].module)):
            ar.merge_arrow(register(s.module), p, s.multiplicity)
    for x in algebra.vertices:
        i = register(injective_rep(algebra, x))
        ar.nodes[i].injective = True
        for s in decompose(_socle_quotient(ar.nodes[i].module)):
            ar.merge_arrow(i, register(s.module), s.multiplicity)

    meshed = set()
    while queue:
        node = ar.nodes[queue.popleft()]
        if not node.projective and node.tau is None:
            result = tau(node.module)
            if result is TranslateMarker.PROJECTIVE:
                node.projective = True
            else:
                node.tau = register(result)
                ar.nodes[node.tau].tau_inverse = node.id
        if not node.injective and node.tau_inverse is None:
            result = tau_inverse(node.module)
            if result is TranslateMarker.INJECTIVE:
                node.injective = True
            else:
                node.tau_inverse = register(result)
                ar.nodes[node.tau_inverse].tau = node.id
        if node.tau_inverse is not None and node.id not in meshed:
            meshed.add(node.id)
            end = ar.nodes[node.tau_inverse]
            sequence = almost_split_sequence(node.module, end.module)
            for s in sequence.middle_terms():
                y = register(s.module)
                ar.merge_arrow(node.id, y, s.multiplicity)
                ar.merge_arrow(y, end.id, s.multiplicity)
        logger.debug(f"knitting {algebra.name}: {len(ar)} modules, {len(queue)} queued")

    violations = ar.check_mesh_additivity()
    if violations:
        raise IncompleteKnitError(f"{len(violations)} meshes are not additive, first at "
                                  f"{ar.nodes[violations[0].node].label()}")
    logger.info(f"knitted {algebra.name}: {len(ar)} indecomposables, {len(ar.arrows)} irreducible maps")
    return ar
