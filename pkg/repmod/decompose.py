"""
Decomposition into Indecomposables

The endomorphism algebra End(M) is computed as a Hom space. Its semisimple
rank is the rank of the trace form (valid in characteristic 0 or above
dim M); rank one means End(M) is local. Otherwise a splitting endomorphism
is searched among the basis and generic combinations: when its
characteristic polynomial has two coprime factors, the Fitting
decomposition M = ker u^d + im u^d splits M.
"""

import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import sympy

from errors import DecompositionInconclusiveError, PreconditionError
from exactlin.field import Field, ModP
from exactlin.matrix import Matrix
from exactlin.subspace import Subspace
from repmod.homs import Morphism, compose, endomorphism_basis, hom_space
from repmod.representation import Representation

logger = logging.getLogger(__name__)

X = sympy.Symbol("x")


@dataclass
class Summand:
    module: Representation
    multiplicity: int = 1


def _to_sympy(value):
    if isinstance(value, ModP):
        return sympy.Integer(value.value)
    return sympy.Rational(value.numerator, value.denominator)


def _factors(matrix: Matrix, field: Field) -> List[List]:
    """Distinct monic irreducible factors of the characteristic polynomial, as coefficient lists."""
    rows = [[_to_sympy(x) for x in row] for row in matrix.rows]
    poly = sympy.Matrix(rows).charpoly(X).as_expr()
    if field.characteristic:
        _, factors = sympy.Poly(poly, X, modulus=field.characteristic).factor_list()
    else:
        _, factors = sympy.Poly(poly, X, domain="QQ").factor_list()
    out = []
    for f, _ in factors:
        coeffs = [field(int(c)) if field.characteristic else field(sympy.Rational(c)) for c in f.all_coeffs()]
        lead = coeffs[0]
        out.append([c / lead for c in coeffs])
    return out


def _evaluate(coeffs: Sequence, matrix: Matrix) -> Matrix:
    field = matrix.field
    result = Matrix.zeros(matrix.nrows, matrix.ncols, field)
    ident = Matrix.identity(matrix.nrows, field)
    for c in coeffs:
        result = result @ matrix + ident.scale(c)
    return result


def _fitting_split(m: Representation, f: Morphism, factor: Sequence) -> Tuple[Representation, Representation]:
    d = m.total_dim
    kernels, images = {}, {}
    for v in m.algebra.vertices:
        block = f.blocks[v]
        if block.nrows == 0:
            kernels[v] = Subspace(0, [], m.field)
            images[v] = Subspace(0, [], m.field)
            continue
        u = _evaluate(factor, block).power(d)
        kernels[v] = Subspace(block.nrows, u.nullspace(), m.field)
        images[v] = Subspace(block.nrows, [u.column(j) for j in range(u.ncols)], m.field)
    return m.submodule(kernels), m.submodule(images)


def _linear_combination(basis: List[Morphism], coefficients: Sequence[int]) -> Morphism:
    first = basis[0]
    blocks = {}
    for v, b in first.blocks.items():
        acc = Matrix.zeros(b.nrows, b.ncols, b.field)
        for c, f in zip(coefficients, basis):
            if c:
                acc = acc + f.blocks[v].scale(b.field(c))
        blocks[v] = acc
    return Morphism(first.source, first.target, blocks)


def _candidates(basis: List[Morphism]):
    yield from basis
    n = len(basis)
    for c in range(1, n + 3):
        yield _linear_combination(basis, [c ** i for i in range(n)])


def find_split(m: Representation, basis: Optional[List[Morphism]] = None
               ) -> Optional[Tuple[Representation, Representation]]:
    """Two nonzero complementary submodules, or None if no candidate endomorphism splits M."""
    basis = basis if basis is not None else endomorphism_basis(m)
    for f in _candidates(basis):
        factors = _factors(f.total_matrix(), m.field)
        if len(factors) >= 2:
            first, second = _fitting_split(m, f, factors[0])
            if not first.is_zero() and not second.is_zero():
                logger.debug(f"split {m.dimension_vector()} into {first.dimension_vector()} + "
                             f"{second.dimension_vector()}")
                return first, second
    return None


def semisimple_rank(m: Representation, basis: Optional[List[Morphism]] = None) -> Optional[int]:
    """
    dim End(M)/rad End(M) as the rank of the trace form, or None when the field is too small.
    """
    if m.field.characteristic and m.field.characteristic <= m.total_dim:
        return None
    basis = basis if basis is not None else endomorphism_basis(m)
    mats = [f.total_matrix() for f in basis]
    gram = Matrix([[(a @ b).trace() for b in mats] for a in mats], ncols=len(mats), field=m.field)
    return gram.rank()


def is_indecomposable(m: Representation) -> bool:
    """
    Raises:
        DecompositionInconclusiveError: If End(M) is not local but no split was found
    """
    if m.is_zero():
        return False
    basis = endomorphism_basis(m)
    if len(basis) == 1 or semisimple_rank(m, basis) == 1:
        return True
    if find_split(m, basis) is not None:
        return False
    raise DecompositionInconclusiveError(f"no splitting endomorphism found for {m!r}")


def _pieces(m: Representation) -> List[Representation]:
    work, done = [m], []
    while work:
        current = work.pop()
        if current.is_zero():
            continue
        basis = endomorphism_basis(current)
        if len(basis) == 1 or semisimple_rank(current, basis) == 1:
            done.append(current)
            continue
        split = find_split(current, basis)
        if split is None:
            raise DecompositionInconclusiveError(f"no splitting endomorphism found for {current!r}")
        work.extend(split)
    return done


def isomorphic_indecomposables(m: Representation, n: Representation) -> bool:
    """
    Isomorphism test for indecomposable modules.

    M and N are isomorphic iff some composite g f of basis intertwiners
    f: M -> N and g: N -> M is invertible, since End(M) is local.
    """
    if m.dimension_vector() != n.dimension_vector():
        return False
    forward = hom_space(m, n).basis
    if not forward:
        return False
    backward = hom_space(n, m).basis
    for f in forward:
        for g in backward:
            if compose(g, f).is_isomorphism():
                return True
    return False


def decompose(m: Representation) -> List[Summand]:
    """
    Indecomposable summands with multiplicities, grouped up to isomorphism.

    Raises:
        DecompositionInconclusiveError: If some piece cannot be split nor shown local
    """
    summands: List[Summand] = []
    for piece in _pieces(m):
        for s in summands:
            if isomorphic_indecomposables(s.module, piece):
                s.multiplicity += 1
                break
        else:
            summands.append(Summand(piece))
    summands.sort(key=lambda s: (s.module.total_dim, s.module.dimension_vector()))
    logger.debug(f"decomposed {m.dimension_vector()} into {len(summands)} iso-classes")
    return summands


def is_isomorphic(m: Representation, n: Representation) -> bool:
    """
    True iff M and N are isomorphic.

    Raises:
        PreconditionError: If the modules live over different algebras
    """
    if m.algebra is not n.algebra:
        raise PreconditionError("is_isomorphic needs two modules over the same algebra")
    if m.dimension_vector() != n.dimension_vector():
        return False
    if m.is_zero():
        return True
    left, right = decompose(m), decompose(n)
    if len(left) == 1 and len(right) == 1 and left[0].multiplicity == right[0].multiplicity == 1:
        return isomorphic_indecomposables(m, n)
    if sorted(s.multiplicity for s in left) != sorted(s.multiplicity for s in right):
        return False
    unmatched = list(right)
    for s in left:
        match = next((t for t in unmatched if t.multiplicity == s.multiplicity
                      and isomorphic_indecomposables(s.module, t.module)), None)
        if match is None:
            return False
        unmatched.remove(match)
    return True
