"""
Almost Split Sequences

For an indecomposable non-injective M with N = tau^-1 M, Ext^1(N, M) is
Hom(Omega N, M) modulo the restrictions of maps from the projective cover P0
of N. A class killed by rad End(M) lies in the socle of Ext^1(N, M) over
End(M), and its pushout along Omega N -> P0 is the middle term E of the
almost split sequence 0 -> M -> E -> N -> 0.
"""

import logging
from dataclasses import dataclass
from typing import List

from errors import IncompleteKnitError, PreconditionError
from exactlin.matrix import Matrix, Vector
from exactlin.subspace import Subspace
from repmod.decompose import Summand, _factors, decompose
from repmod.homs import Morphism, compose, endomorphism_basis, hom_space
from repmod.representation import Representation
from repmod.resolution import syzygy

logger = logging.getLogger(__name__)


@dataclass
class AlmostSplitSequence:
    start: Representation
    middle: Representation
    end: Representation

    def middle_terms(self) -> List[Summand]:
        return decompose(self.middle)


def _flatten(f: Morphism) -> Vector:
    """Coordinates of a morphism in the unknowns of hom_space."""
    out = []
    for v in f.source.algebra.vertices:
        for row in f.blocks[v].rows:
            out.extend(row)
    return tuple(out)


def radical_endomorphisms(m: Representation) -> List[Morphism]:
    """
    A spanning set of rad End(M): each basis endomorphism minus its eigenvalue.

    Raises:
        IncompleteKnitError: If some endomorphism has no eigenvalue in the ground field
    """
    out = []
    for f in endomorphism_basis(m):
        factors = _factors(f.total_matrix(), m.field)
        if len(factors) != 1 or len(factors[0]) != 2:
            raise IncompleteKnitError(f"End({m!r}) has a residue field larger than the ground field")
        eigenvalue = -factors[0][1]
        blocks = {v: b - Matrix.identity(b.nrows, m.field).scale(eigenvalue) for v, b in f.blocks.items()}
        out.append(Morphism(m, m, blocks))
    return out


def almost_split_sequence(m: Representation, n: Representation) -> AlmostSplitSequence:
    """
    The almost split sequence starting at M.

    Args:
        m: Indecomposable non-injective module
        n: A module isomorphic to tau^-1 M over the same algebra

    Returns:
        The sequence with its middle term as a pushout of M and the projective cover of N

    Raises:
        PreconditionError: If the modules live over different algebras or Ext^1(N, M) = 0
        IncompleteKnitError: If no extension class is annihilated by rad End(M)
    """
    if m.algebra is not n.algebra:
        raise PreconditionError("almost split sequence needs both end terms over the same algebra")
    field = m.field
    vertices = m.algebra.vertices
    step = syzygy(n)
    omega = step.syzygy
    cover = step.cover.representation()
    inclusion = {w: Matrix.from_columns(step.kernel[w].basis, cover.dims[w], field) for w in vertices}

    cocycles = hom_space(omega, m)
    restricted = []
    for g in hom_space(cover, m).basis:
        blocks = {w: g.blocks[w] @ inclusion[w] for w in vertices}
        restricted.append(_flatten(Morphism(omega, m, blocks)))
    coboundaries = Subspace(cocycles.subspace.ambient, restricted, field)
    if cocycles.dim == coboundaries.dim:
        raise PreconditionError(f"Ext^1({n!r}, {m!r}) = 0")

    # residues of r o xi modulo coboundaries, one column per cocycle
    radical = radical_endomorphisms(m)
    columns = []
    for xi in cocycles.basis:
        residue: List = []
        for r in radical:
            residue.extend(coboundaries.reduce(_flatten(compose(r, xi))))
        columns.append(tuple(residue))
    conditions = Matrix.from_columns(columns, len(columns[0]), field)
    extension = None
    for coefficients in conditions.nullspace():
        candidate = cocycles.combination(coefficients)
        if not coboundaries.contains(_flatten(candidate)):
            extension = candidate
            break
    if extension is None:
        raise IncompleteKnitError(f"no socle element in Ext^1({n!r}, {m!r})")

    total = m.direct_sum(cover)
    graph = {}
    for w in vertices:
        vectors = [extension.blocks[w].column(j) + tuple(-x for x in inclusion[w].column(j))
                   for j in range(omega.dims[w])]
        graph[w] = Subspace(total.dims[w], vectors, field)
    middle = total.quotient(graph)
    logger.debug(f"almost split sequence {m.dimension_vector()} -> {middle.dimension_vector()} -> "
                 f"{n.dimension_vector()}, dim Ext^1 = {cocycles.dim - coboundaries.dim}")
    return AlmostSplitSequence(start=m, middle=middle, end=n)
