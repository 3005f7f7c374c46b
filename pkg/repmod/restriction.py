"""
Change of Rings along a Surjection

A module over the target of a surjection A -> C is an A-module on which the
killed arrows act by zero; conversely an A-module becomes a C-module after
dividing out the submodule generated by the images of killed arrows.
"""

import logging
from typing import Dict, List

from exactlin.matrix import Vector
from exactlin.subspace import Subspace
from extension.surjection import AlgebraSurjection
from repmod.representation import Representation

logger = logging.getLogger(__name__)


def restrict_along_surjection(m: Representation, surjection: AlgebraSurjection) -> Representation:
    """
    Pull a target module back to the source algebra.

    Raises:
        RelationsViolatedError: If the result breaks a source relation (invalid surjection)
    """
    maps = {}
    for a in surjection.source.quiver.arrows:
        image = surjection.arrow_map.get(a.name)
        if image is not None:
            maps[a.name] = m.maps[image]
    return Representation(surjection.source, m.dims, maps, name=m.name, check=True)


def _killed_submodule(m: Representation, surjection: AlgebraSurjection) -> Dict[str, Subspace]:
    quiver = m.algebra.quiver
    vectors: Dict[str, List[Vector]] = {v: [] for v in m.algebra.vertices}
    for name in surjection.killed():
        matrix = m.maps[name]
        vectors[quiver.arrow(name).target].extend(matrix.column(j) for j in range(matrix.ncols))
    spaces = {v: Subspace(m.dims[v], vectors[v], m.field) for v in m.algebra.vertices}
    changed = True
    while changed:
        changed = False
        for a in quiver.arrows:
            source, target = spaces[a.source], spaces[a.target]
            grown = target + source.image(m.maps[a.name])
            if grown.dim > target.dim:
                spaces[a.target] = grown
                changed = True
    return spaces


def push_forward(m: Representation, surjection: AlgebraSurjection) -> Representation:
    """
    The largest quotient of a source module on which killed arrows act by zero, as a target module.

    Raises:
        RelationsViolatedError: If the quotient breaks a target relation
    """
    quotient = m.quotient(_killed_submodule(m, surjection))
    maps = {}
    for a in surjection.source.quiver.arrows:
        image = surjection.arrow_map.get(a.name)
        if image is not None:
            maps[image] = quotient.maps[a.name]
    return Representation(surjection.target, quotient.dims, maps, name=m.name, check=True)
