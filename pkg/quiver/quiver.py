"""
Quivers

Finite quivers with named vertices and arrows, path enumeration and the graph
predicates used by the extension module.
"""

import itertools
import logging
from dataclasses import dataclass
from typing import Dict, Iterable, List, Sequence, Tuple

import networkx as nx

from errors import QuiverError
from quiver.path import Path

logger = logging.getLogger(__name__)

DEFAULT_CYCLE_CAP = 10 ** 4


@dataclass(frozen=True)
class Arrow:
    name: str
    source: str
    target: str


@dataclass(frozen=True)
class ChordlessCycle:
    """A chordless cycle of the underlying graph, tagged by orientation."""

    vertices: Tuple[str, ...]
    arrows: Tuple[str, ...]
    oriented: bool


class Quiver:
    """
    A finite quiver.

    Vertex and arrow order is the declaration order; it drives the
    length-lex path order used everywhere for determinism.
    """

    def __init__(self, vertices: Sequence[str], arrows: Sequence[Arrow] = ()):
        self.vertices: Tuple[str, ...] = tuple(vertices)
        self.arrows: Tuple[Arrow, ...] = tuple(arrows)
        if len(set(self.vertices)) != len(self.vertices):
            raise QuiverError(f"duplicate vertex names in {list(self.vertices)}")
        self.vertex_index: Dict[str, int] = {v: i for i, v in enumerate(self.vertices)}
        self.arrow_index: Dict[str, int] = {}
        self._arrows_by_name: Dict[str, Arrow] = {}
        self._out: Dict[str, List[Arrow]] = {v: [] for v in self.vertices}
        self._in: Dict[str, List[Arrow]] = {v: [] for v in self.vertices}
        for i, arrow in enumerate(self.arrows):
            if arrow.name in self._arrows_by_name:
                raise QuiverError(f"duplicate arrow name {arrow.name!r}")
            if arrow.name in self.vertex_index:
                raise QuiverError(f"arrow name {arrow.name!r} clashes with a vertex name")
            for end in (arrow.source, arrow.target):
                if end not in self.vertex_index:
                    raise QuiverError(f"arrow {arrow.name!r} uses undeclared vertex {end!r}")
            self.arrow_index[arrow.name] = i
            self._arrows_by_name[arrow.name] = arrow
            self._out[arrow.source].append(arrow)
            self._in[arrow.target].append(arrow)

    def arrow(self, name: str) -> Arrow:
        try:
            return self._arrows_by_name[name]
        except KeyError:
            raise QuiverError(f"unknown arrow {name!r}")

    def has_arrow(self, name: str) -> bool:
        return name in self._arrows_by_name

    def arrows_from(self, vertex: str) -> List[Arrow]:
        return self._out[vertex]

    def arrows_to(self, vertex: str) -> List[Arrow]:
        return self._in[vertex]

    def check_vertex(self, vertex: str) -> None:
        if vertex not in self.vertex_index:
            raise QuiverError(f"unknown vertex {vertex!r}")

    def path_key(self, path: Path) -> Tuple:
        """Length-lex sort key of a path."""
        if path.arrows:
            return (len(path.arrows), tuple(self.arrow_index[a] for a in path.arrows))
        return (0, (self.vertex_index[path.source],))

    def arrow_path(self, name: str) -> Path:
        a = self.arrow(name)
        return Path(a.source, a.target, (name,))

    def opposite(self) -> "Quiver":
        return Quiver(self.vertices, [Arrow(a.name, a.target, a.source) for a in self.arrows])

    def without_arrows(self, names: Iterable[str]) -> "Quiver":
        drop = set(names)
        return Quiver(self.vertices, [a for a in self.arrows if a.name not in drop])

    def with_arrows(self, arrows: Iterable[Arrow]) -> "Quiver":
        return Quiver(self.vertices, list(self.arrows) + list(arrows))

    def to_networkx(self) -> nx.MultiDiGraph:
        graph = nx.MultiDiGraph()
        graph.add_nodes_from(self.vertices)
        for a in self.arrows:
            graph.add_edge(a.source, a.target, key=a.name)
        return graph

    def is_acyclic(self) -> bool:
        return is_acyclic(self)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Quiver):
            return NotImplemented
        return self.vertices == other.vertices and self.arrows == other.arrows

    def __hash__(self) -> int:
        return hash((self.vertices, self.arrows))

    def __repr__(self) -> str:
        return f"Quiver({len(self.vertices)} vertices, {len(self.arrows)} arrows)"


def enumerate_paths(quiver: Quiver, length: int) -> List[Path]:
    """
    All paths of exactly the given length in length-lex order.

    Args:
        quiver: The quiver
        length: Path length (0 gives the trivial paths)

    Returns:
        List of paths
    """
    if length < 0:
        raise QuiverError(f"path length must be non-negative, got {length}")
    if length == 0:
        return [Path.trivial(v) for v in quiver.vertices]
    paths = [quiver.arrow_path(a.name) for a in quiver.arrows]
    for _ in range(length - 1):
        paths = [Path(p.source, a.target, p.arrows + (a.name,))
                 for p in paths for a in quiver.arrows_from(p.target)]
    return paths


def is_acyclic(quiver: Quiver) -> bool:
    """True iff the quiver has no oriented cycle (loops count as cycles)."""
    return nx.is_directed_acyclic_graph(quiver.to_networkx())


def _arrows_between(quiver: Quiver, x: str, y: str) -> List[Arrow]:
    return [a for a in quiver.arrows if {a.source, a.target} == {x, y} and a.source != a.target]


def _orient(quiver: Quiver, cycle: Sequence[str]) -> Tuple[Tuple[str, ...], bool]:
    """Pick arrows along a vertex cycle and decide whether a traversal is oriented."""
    n = len(cycle)
    steps = [(cycle[i], cycle[(i + 1) % n]) for i in range(n)]
    forward = all(any(a.source == u and a.target == v for a in quiver.arrows_from(u)) for u, v in steps)
    backward = all(any(a.source == v and a.target == u for a in quiver.arrows_from(v)) for u, v in steps)
    names = tuple(_arrows_between(quiver, u, v)[0].name for u, v in steps)
    return names, forward or backward


def chordless_cycles(quiver: Quiver, cap: int = DEFAULT_CYCLE_CAP) -> List[ChordlessCycle]:
    """
    Chordless cycles of the underlying graph, each tagged oriented or not.

    A cycle is chordless when the full subquiver on its vertices is the cycle
    itself: a loop alone at its vertex, a pair of arrows joining two vertices,
    or an induced cycle of length at least three with single edges.

    Args:
        quiver: The quiver
        cap: Maximal number of cycles to enumerate

    Returns:
        Chordless cycles in a deterministic order
    """
    found: List[ChordlessCycle] = []
    for v in quiver.vertices:
        loops = [a for a in quiver.arrows_from(v) if a.target == v]
        if len(loops) == 1:
            found.append(ChordlessCycle((v,), (loops[0].name,), True))
    for x, y in itertools.combinations(quiver.vertices, 2):
        between = _arrows_between(quiver, x, y)
        has_loops = any(a.target == a.source for a in quiver.arrows_from(x) + quiver.arrows_from(y))
        if len(between) == 2 and not has_loops:
            first, second = between
            oriented = first.source != second.source
            found.append(ChordlessCycle((x, y), (first.name, second.name), oriented))

    simple = nx.Graph()
    simple.add_nodes_from(quiver.vertices)
    simple.add_edges_from((a.source, a.target) for a in quiver.arrows if a.source != a.target)
    longer = []
    for cycle in itertools.islice(nx.chordless_cycles(simple), cap + 1):
        if len(cycle) < 3:
            continue
        members = set(cycle)
        induced = [a for a in quiver.arrows if a.source in members and a.target in members]
        if len(induced) != len(cycle):
            continue
        start = min(range(len(cycle)), key=lambda i: quiver.vertex_index[cycle[i]])
        rotated = list(cycle[start:]) + list(cycle[:start])
        if quiver.vertex_index[rotated[-1]] < quiver.vertex_index[rotated[1]]:
            rotated = [rotated[0]] + rotated[1:][::-1]
        names, oriented = _orient(quiver, rotated)
        longer.append(ChordlessCycle(tuple(rotated), names, oriented))
    if len(found) + len(longer) > cap:
        logger.warning(f"chordless cycle enumeration stopped at cap {cap}")
    longer.sort(key=lambda c: (len(c.vertices), tuple(quiver.vertex_index[v] for v in c.vertices)))
    return (found + longer)[:cap]
