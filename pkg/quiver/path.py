"""
Paths and Cycles

Paths compose left to right: alpha*beta means alpha then beta, defined when
target(alpha) = source(beta). A path p from s to t satisfies e_s p e_t = p.
"""

from dataclasses import dataclass
from typing import TYPE_CHECKING, Optional, Sequence, Tuple

from errors import CompositionError

if TYPE_CHECKING:
    from quiver.quiver import Quiver


@dataclass(frozen=True)
class Path:
    """A path in a quiver; trivial paths carry their vertex as source and target."""

    source: str
    target: str
    arrows: Tuple[str, ...] = ()

    @classmethod
    def trivial(cls, vertex: str) -> "Path":
        return cls(vertex, vertex, ())

    @classmethod
    def from_arrows(cls, quiver: "Quiver", names: Sequence[str]) -> "Path":
        """
        Build a path from consecutive arrow names.

        Raises:
            CompositionError: If two consecutive arrows do not compose
        """
        if not names:
            raise CompositionError("a path literal needs at least one arrow")
        arrows = [quiver.arrow(n) for n in names]
        for first, second in zip(arrows, arrows[1:]):
            if first.target != second.source:
                raise CompositionError(
                    f"{first.name}*{second.name} does not compose: target({first.name})={first.target} "
                    f"but source({second.name})={second.source}")
        return cls(arrows[0].source, arrows[-1].target, tuple(names))

    @property
    def length(self) -> int:
        return len(self.arrows)

    def is_trivial(self) -> bool:
        return not self.arrows

    def is_closed(self) -> bool:
        return self.source == self.target

    def then(self, other: "Path") -> Optional["Path"]:
        """Concatenation self followed by other, None if not composable."""
        if self.target != other.source:
            return None
        return Path(self.source, other.target, self.arrows + other.arrows)

    def reversed(self) -> "Path":
        """The same path read in the opposite quiver."""
        return Path(self.target, self.source, tuple(reversed(self.arrows)))

    def contains_any(self, names) -> bool:
        return any(a in names for a in self.arrows)

    def count_in(self, names) -> int:
        return sum(1 for a in self.arrows if a in names)

    def __str__(self) -> str:
        if not self.arrows:
            return f"e_{self.source}"
        return "*".join(self.arrows)


def canonical_rotation(arrows: Sequence[str]) -> Tuple[str, ...]:
    """Lexicographically minimal rotation of a cyclic arrow word."""
    word = tuple(arrows)
    if not word:
        return word
    return min(word[i:] + word[:i] for i in range(len(word)))


@dataclass(frozen=True)
class Cycle:
    """An oriented cycle stored in its canonical rotation."""

    arrows: Tuple[str, ...]

    @classmethod
    def from_arrows(cls, arrows: Sequence[str]) -> "Cycle":
        return cls(canonical_rotation(arrows))

    def rotations(self):
        word = self.arrows
        return [word[i:] + word[:i] for i in range(len(word))]

    def to_path(self, quiver: "Quiver") -> Path:
        return Path.from_arrows(quiver, self.arrows)

    def __str__(self) -> str:
        return "*".join(self.arrows)
