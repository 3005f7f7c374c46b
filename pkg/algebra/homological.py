"""
Homological Invariants of Bound Quiver Algebras

Ext^2 between simples, global dimension bounds certified by minimal
resolutions, the gentle predicate, and the Cartan and Coxeter matrices.
"""

import logging
from dataclasses import dataclass, field as dc_field
from typing import Dict, Optional

import numpy as np

from algebra.bound_algebra import BoundAlgebra
from errors import PreconditionError
from exactlin.field import QQ
from exactlin.matrix import Matrix
from repmod.representation import simple_rep
from repmod.resolution import projective_resolution

logger = logging.getLogger(__name__)


def ext2_simples_dim(algebra: BoundAlgebra, x: str, y: str) -> int:
    """dim Ext^2(S_x, S_y): the multiplicity of P_y in the second term of a minimal resolution of S_x."""
    algebra.quiver.check_vertex(y)
    return projective_resolution(simple_rep(algebra, x), 2).multiplicity(2, y)


@dataclass
class GlobalDimensionCertificate:
    """Projective dimensions of the simples, None where they exceed the bound."""

    bound: int
    holds: bool
    projective_dimensions: Dict[str, Optional[int]] = dc_field(default_factory=dict)
    witness: Optional[str] = None

    def __bool__(self) -> bool:
        return self.holds


def global_dimension_le(algebra: BoundAlgebra, n: int) -> GlobalDimensionCertificate:
    """
    Decide gldim <= n from resolutions of the simples computed to length n + 1.

    Args:
        algebra: Finite dimensional algebra
        n: The bound

    Returns:
        Certificate that is truthy iff every simple has projective dimension at most n
    """
    dims: Dict[str, Optional[int]] = {}
    witness = None
    for x in algebra.vertices:
        dims[x] = projective_resolution(simple_rep(algebra, x), n).length
        if dims[x] is None and witness is None:
            witness = x
    holds = witness is None
    logger.debug(f"{algebra.name}: gldim <= {n} is {holds} (projective dimensions {dims})")
    return GlobalDimensionCertificate(bound=n, holds=holds, projective_dimensions=dims, witness=witness)


def is_gentle(algebra: BoundAlgebra) -> bool:
    """Monomial quadratic relations and the gentle valency conditions."""
    quiver = algebra.quiver
    for relation in algebra.minimal_relation_system():
        terms = relation.element.terms
        if len(terms) != 1 or next(iter(terms)).length != 2:
            return False
    for v in quiver.vertices:
        if len(quiver.arrows_from(v)) > 2 or len(quiver.arrows_to(v)) > 2:
            return False
    for b in quiver.arrows:
        after = [c for c in quiver.arrows_from(b.target)]
        before = [a for a in quiver.arrows_to(b.source)]
        zero_after = [c for c in after if algebra.word(b.name, c.name).is_zero()]
        zero_before = [a for a in before if algebra.word(a.name, b.name).is_zero()]
        if len(zero_after) > 1 or len(after) - len(zero_after) > 1:
            return False
        if len(zero_before) > 1 or len(before) - len(zero_before) > 1:
            return False
    return True


def cartan_matrix(algebra: BoundAlgebra) -> np.ndarray:
    """Integer matrix whose column x is the dimension vector of P_x."""
    vertices = algebra.vertices
    matrix = np.zeros((len(vertices), len(vertices)), dtype=np.int64)
    for j, x in enumerate(vertices):
        for i, v in enumerate(vertices):
            matrix[i, j] = len(algebra.basis_paths_between(x, v))
    return matrix


def coxeter_matrix(algebra: BoundAlgebra) -> np.ndarray:
    """
    Phi = -C^T C^-1; over a hereditary algebra dim tau M = Phi dim M for non-projective indecomposables.

    The inverse is taken over the rationals.

    Raises:
        PreconditionError: If the Cartan matrix is singular or Phi is not integral
    """
    cartan = Matrix(cartan_matrix(algebra).tolist(), ncols=len(algebra.vertices), field=QQ)
    inverse = cartan.inverse()
    if inverse is None:
        raise PreconditionError(f"Cartan matrix of {algebra.name} is singular")
    phi = (cartan.transpose() @ inverse).scale(QQ(-1))
    if any(x.denominator != 1 for row in phi.rows for x in row):
        raise PreconditionError(f"Coxeter matrix of {algebra.name} is not integral")
    return np.array([[int(x) for x in row] for row in phi.rows], dtype=np.int64).reshape(phi.shape)
