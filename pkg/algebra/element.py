"""
Algebra Elements

Finite linear combinations of paths with exact coefficients: the common
currency of relations, derivatives, products and normal forms.
"""

from typing import Dict, Iterable, List, Mapping, Optional, Tuple

from exactlin.field import QQ, Field, Scalar
from quiver.path import Path
from quiver.quiver import Quiver


class AlgebraElement:
    """An element of the path algebra kQ."""

    __slots__ = ("quiver", "field", "_terms")

    def __init__(self, quiver: Quiver, terms: Optional[Mapping[Path, object]] = None, field: Field = QQ):
        self.quiver = quiver
        self.field = field
        clean: Dict[Path, Scalar] = {}
        for path, coeff in (terms or {}).items():
            c = field(coeff)
            if c != 0:
                clean[path] = c
        self._terms = clean

    @classmethod
    def zero(cls, quiver: Quiver, field: Field = QQ) -> "AlgebraElement":
        return cls(quiver, {}, field)

    @classmethod
    def from_path(cls, quiver: Quiver, path: Path, coeff: object = 1, field: Field = QQ) -> "AlgebraElement":
        return cls(quiver, {path: coeff}, field)

    @classmethod
    def idempotent(cls, quiver: Quiver, vertex: str, field: Field = QQ) -> "AlgebraElement":
        quiver.check_vertex(vertex)
        return cls(quiver, {Path.trivial(vertex): 1}, field)

    @classmethod
    def arrow(cls, quiver: Quiver, name: str, field: Field = QQ) -> "AlgebraElement":
        return cls(quiver, {quiver.arrow_path(name): 1}, field)

    @classmethod
    def word(cls, quiver: Quiver, names: Iterable[str], coeff: object = 1, field: Field = QQ) -> "AlgebraElement":
        return cls(quiver, {Path.from_arrows(quiver, list(names)): coeff}, field)

    @property
    def terms(self) -> Dict[Path, Scalar]:
        return dict(self._terms)

    def items(self) -> List[Tuple[Path, Scalar]]:
        """Terms in length-lex order."""
        return sorted(self._terms.items(), key=lambda kv: self.quiver.path_key(kv[0]))

    def support(self) -> List[Path]:
        return [p for p, _ in self.items()]

    def coefficient(self, path: Path) -> Scalar:
        return self._terms.get(path, self.field.zero)

    def is_zero(self) -> bool:
        return not self._terms

    def endpoints(self) -> Optional[Tuple[str, str]]:
        """(source, target) when all terms are parallel, otherwise None."""
        ends = {(p.source, p.target) for p in self._terms}
        return ends.pop() if len(ends) == 1 else None

    def min_length(self) -> int:
        return min((p.length for p in self._terms), default=0)

    def max_length(self) -> int:
        return max((p.length for p in self._terms), default=0)

    def _combine(self, other: "AlgebraElement", sign: int) -> "AlgebraElement":
        terms = dict(self._terms)
        for p, c in other._terms.items():
            terms[p] = terms.get(p, self.field.zero) + sign * c
        return AlgebraElement(self.quiver, terms, self.field)

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        return self._combine(other, 1)

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        return self._combine(other, -1)

    def __neg__(self) -> "AlgebraElement":
        return self.scale(-1)

    def scale(self, c: object) -> "AlgebraElement":
        c = self.field(c)
        return AlgebraElement(self.quiver, {p: c * v for p, v in self._terms.items()}, self.field)

    def __mul__(self, other: "AlgebraElement") -> "AlgebraElement":
        """Concatenation product in kQ; non-composable pairs multiply to zero."""
        terms: Dict[Path, Scalar] = {}
        for p, a in self._terms.items():
            for q, b in other._terms.items():
                r = p.then(q)
                if r is not None:
                    terms[r] = terms.get(r, self.field.zero) + a * b
        return AlgebraElement(self.quiver, terms, self.field)

    def truncate(self, bound: int) -> "AlgebraElement":
        """Drop all paths of length at least bound."""
        return AlgebraElement(self.quiver, {p: c for p, c in self._terms.items() if p.length < bound}, self.field)

    def reversed(self, opposite: Quiver) -> "AlgebraElement":
        """The same element read in the opposite quiver."""
        return AlgebraElement(opposite, {p.reversed(): c for p, c in self._terms.items()}, self.field)

    def map_arrows(self, target: Quiver, arrow_map: Mapping[str, Optional[str]],
                   vertex_map: Optional[Mapping[str, str]] = None) -> "AlgebraElement":
        """
        Push the element along an arrow map; arrows sent to None kill their paths.

        Args:
            target: Quiver of the image
            arrow_map: Source arrow name to target arrow name or None
            vertex_map: Vertex renaming, identity when omitted
        """
        vmap = vertex_map or {}
        terms: Dict[Path, Scalar] = {}
        for p, c in self._terms.items():
            if any(arrow_map.get(a) is None for a in p.arrows):
                continue
            if p.arrows:
                image = Path.from_arrows(target, [arrow_map[a] for a in p.arrows])
            else:
                image = Path.trivial(vmap.get(p.source, p.source))
            terms[image] = terms.get(image, self.field.zero) + c
        return AlgebraElement(target, terms, self.field)

    def restrict(self, keep) -> "AlgebraElement":
        """Keep only the terms whose path satisfies the predicate."""
        return AlgebraElement(self.quiver, {p: c for p, c in self._terms.items() if keep(p)}, self.field)

    def with_quiver(self, quiver: Quiver) -> "AlgebraElement":
        return AlgebraElement(quiver, self._terms, self.field)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def to_text(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for i, (p, c) in enumerate(self.items()):
            negative = self.field.characteristic == 0 and c < 0
            magnitude = -c if negative else c
            body = str(p) if magnitude == 1 else f"{magnitude}*{p}"
            if i == 0:
                parts.append(f"-{body}" if negative else body)
            else:
                parts.append(f"- {body}" if negative else f"+ {body}")
        return " ".join(parts)

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"AlgebraElement({self.to_text()})"
