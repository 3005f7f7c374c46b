"""
Hom Spaces

Intertwiners between representations, found as the nullspace of the linear
equations N(a) f_s = f_t M(a) over all arrows a: s -> t.
"""

import logging
from dataclasses import dataclass
from typing import Dict, List

from errors import PreconditionError
from exactlin.matrix import Matrix, block_diagonal
from exactlin.subspace import Subspace
from repmod.representation import Representation

logger = logging.getLogger(__name__)


@dataclass
class Morphism:
    """A module map given by one block f_v: M_v -> N_v per vertex."""

    source: Representation
    target: Representation
    blocks: Dict[str, Matrix]

    def total_matrix(self) -> Matrix:
        vertices = self.source.algebra.vertices
        return block_diagonal([self.blocks[v] for v in vertices], self.source.field)

    def is_zero(self) -> bool:
        return all(b.is_zero() for b in self.blocks.values())

    def is_isomorphism(self) -> bool:
        if self.source.dimension_vector() != self.target.dimension_vector():
            return False
        return all(b.nrows == 0 or b.determinant() != 0 for b in self.blocks.values())

    def is_homomorphism(self) -> bool:
        for a in self.source.algebra.quiver.arrows:
            left = self.target.maps[a.name] @ self.blocks[a.source]
            right = self.blocks[a.target] @ self.source.maps[a.name]
            if left != right:
                return False
        return True


def compose(g: Morphism, f: Morphism) -> Morphism:
    """g after f."""
    if f.target.dimension_vector() != g.source.dimension_vector():
        raise PreconditionError("morphisms do not compose")
    return Morphism(f.source, g.target, {v: g.blocks[v] @ f.blocks[v] for v in f.blocks})


def identity_morphism(m: Representation) -> Morphism:
    return Morphism(m, m, {v: Matrix.identity(m.dims[v], m.field) for v in m.algebra.vertices})


@dataclass
class HomSpace:
    source: Representation
    target: Representation
    basis: List[Morphism]
    subspace: Subspace

    @property
    def dim(self) -> int:
        return len(self.basis)

    def combination(self, coefficients) -> Morphism:
        vector = self.subspace.combination(coefficients)
        return _unpack(self.source, self.target, vector)


def _block_layout(m: Representation, n: Representation) -> Dict[str, int]:
    offsets, acc = {}, 0
    for v in m.algebra.vertices:
        offsets[v] = acc
        acc += n.dims[v] * m.dims[v]
    return offsets


def _unpack(m: Representation, n: Representation, vector) -> Morphism:
    offsets = _block_layout(m, n)
    blocks = {}
    for v in m.algebra.vertices:
        rows, cols, off = n.dims[v], m.dims[v], offsets[v]
        blocks[v] = Matrix([[vector[off + k * cols + j] for j in range(cols)] for k in range(rows)],
                           ncols=cols, field=m.field)
    return Morphism(m, n, blocks)


def hom_space(m: Representation, n: Representation) -> HomSpace:
    """
    Hom(M, N) as an explicit basis of intertwiners.

    Raises:
        PreconditionError: If the modules live over different algebras
    """
    if m.algebra is not n.algebra:
        raise PreconditionError("hom_space needs two modules over the same algebra")
    field = m.field
    offsets = _block_layout(m, n)
    unknowns = sum(n.dims[v] * m.dims[v] for v in m.algebra.vertices)
    equations: List[List] = []
    for a in m.algebra.quiver.arrows:
        s, t = a.source, a.target
        ma, na = m.maps[a.name], n.maps[a.name]
        for k in range(n.dims[t]):
            for j in range(m.dims[s]):
                row = [field.zero] * unknowns
                # (N(a) f_s)[k][j]
                for l in range(n.dims[s]):
                    c = na[k, l]
                    if c != 0:
                        idx = offsets[s] + l * m.dims[s] + j
                        row[idx] = row[idx] + c
                # -(f_t M(a))[k][j]
                for l in range(m.dims[t]):
                    c = ma[l, j]
                    if c != 0:
                        idx = offsets[t] + k * m.dims[t] + l
                        row[idx] = row[idx] - c
                if any(x != 0 for x in row):
                    equations.append(row)
    if equations:
        solutions = Matrix(equations, ncols=unknowns, field=field).nullspace()
    else:
        solutions = [tuple(field.one if i == j else field.zero for i in range(unknowns)) for j in range(unknowns)]
    subspace = Subspace(unknowns, solutions, field)
    basis = [_unpack(m, n, v) for v in subspace.basis]
    logger.debug(f"dim Hom({m!r}, {n!r}) = {len(basis)}")
    return HomSpace(m, n, basis, subspace)


def endomorphism_basis(m: Representation) -> List[Morphism]:
    return hom_space(m, m).basis
