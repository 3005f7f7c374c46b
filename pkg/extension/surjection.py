"""
Surjective Algebra Morphisms

A surjection kQ/I -> kQ'/I' between algebras on the same vertices is given
by an arrow map: each source arrow goes to a target arrow with the same
endpoints or to zero.
"""

import logging
from dataclasses import dataclass
from typing import Dict, List, Optional

from algebra.bound_algebra import BoundAlgebra
from algebra.element import AlgebraElement
from errors import IncompatibleMapError

logger = logging.getLogger(__name__)


@dataclass
class AlgebraSurjection:
    source: BoundAlgebra
    target: BoundAlgebra
    arrow_map: Dict[str, Optional[str]]

    def killed(self) -> List[str]:
        return [a.name for a in self.source.quiver.arrows if self.arrow_map.get(a.name) is None]

    def apply(self, x: AlgebraElement) -> AlgebraElement:
        """Image of a source element, in target normal form."""
        return self.target.normal_form(x.map_arrows(self.target.quiver, self.arrow_map))

    def preimage_arrow(self, name: str) -> str:
        for a, b in self.arrow_map.items():
            if b == name:
                return a
        raise IncompatibleMapError(f"target arrow {name!r} is not hit")

    def then(self, other: "AlgebraSurjection") -> "AlgebraSurjection":
        """This surjection followed by other."""
        arrow_map = {}
        for a, b in self.arrow_map.items():
            arrow_map[a] = other.arrow_map.get(b) if b is not None else None
        return AlgebraSurjection(self.source, other.target, arrow_map)

    def validate(self) -> None:
        """
        Raises:
            IncompatibleMapError: If vertices differ or an arrow image has other endpoints
        """
        if self.source.vertices != self.target.vertices:
            raise IncompatibleMapError(f"vertex sets differ: {self.source.vertices} vs {self.target.vertices}")
        for a in self.source.quiver.arrows:
            if a.name not in self.arrow_map:
                raise IncompatibleMapError(f"arrow {a.name!r} has no image")
            b = self.arrow_map[a.name]
            if b is None:
                continue
            if not self.target.quiver.has_arrow(b):
                raise IncompatibleMapError(f"arrow {a.name!r} maps to unknown arrow {b!r}")
            image = self.target.quiver.arrow(b)
            if (image.source, image.target) != (a.source, a.target):
                raise IncompatibleMapError(f"arrow {a.name!r} and its image {b!r} have different endpoints")
        unknown = set(self.arrow_map) - {a.name for a in self.source.quiver.arrows}
        if unknown:
            raise IncompatibleMapError(f"arrow map names unknown arrows {sorted(unknown)}")

    def is_valid(self) -> bool:
        """Ideal-compatible and onto; endpoint problems raise instead."""
        self.validate()
        for r in self.source.relations:
            if not self.apply(r).is_zero():
                logger.info(f"relation {r} does not map into the ideal of {self.target.name}")
                return False
        hit = {b for b in self.arrow_map.values() if b is not None}
        missing = [a.name for a in self.target.quiver.arrows if a.name not in hit]
        if missing:
            logger.info(f"arrows {missing} of {self.target.name} are not hit")
            return False
        return True


def check_surjection(source: BoundAlgebra, target: BoundAlgebra, arrow_map: Dict[str, Optional[str]]) -> bool:
    """
    True iff the arrow map induces a surjective algebra morphism.

    Raises:
        IncompatibleMapError: If the map does not respect vertices and arrow endpoints
    """
    return AlgebraSurjection(source, target, dict(arrow_map)).is_valid()


def quotient_surjection(source: BoundAlgebra, target: BoundAlgebra) -> AlgebraSurjection:
    """Arrow map by name; source arrows missing from the target quiver are killed."""
    arrow_map = {a.name: (a.name if target.quiver.has_arrow(a.name) else None) for a in source.quiver.arrows}
    surjection = AlgebraSurjection(source, target, arrow_map)
    surjection.validate()
    return surjection
