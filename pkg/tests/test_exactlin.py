import itertools
from fractions import Fraction

import numpy as np
import pytest

from errors import AmbientMismatchError, FieldError
from exactlin.field import QQ, ModP, PrimeField, field_from_name
from exactlin.matrix import Matrix, block_diagonal
from exactlin.sparse import SparseReducer
from exactlin.subspace import Subspace, subspace_ops


def brute_span(vectors, p, ambient):
    """All F_p combinations of the vectors, as tuples of residues."""
    span = set()
    for coeffs in itertools.product(range(p), repeat=len(vectors)):
        span.add(tuple(sum(c * v[i] for c, v in zip(coeffs, vectors)) % p for i in range(ambient)))
    if not vectors:
        span.add((0,) * ambient)
    return span


class TestFields:
    """Test cases for scalar fields."""

    def test_rational_coercion(self):
        """Test integers and a/b strings become exact fractions."""
        assert QQ(3) == Fraction(3)
        assert QQ("2/4") == Fraction(1, 2)

    def test_rational_rejects_garbage(self):
        """Test non-numeric text raises FieldError."""
        with pytest.raises(FieldError):
            QQ("abc")

    def test_prime_field_arithmetic(self):
        """Test inverse and negation in F_7."""
        f7 = PrimeField(7)
        three = f7(3)
        assert three * f7.one / three == 1
        assert (three / f7(5)) * 5 == 3
        assert -three == 4

    def test_prime_field_requires_prime(self):
        """Test a composite modulus is refused."""
        with pytest.raises(FieldError):
            PrimeField(9)

    def test_prime_field_fraction(self):
        """Test a fraction is mapped through the inverse of its denominator."""
        f5 = PrimeField(5)
        assert f5("1/2") == 3

    def test_mixed_primes_refused(self):
        """Test elements of different prime fields do not mix."""
        with pytest.raises(FieldError):
            ModP(1, 3) + ModP(1, 5)

    def test_field_from_name(self):
        """Test the names accepted by input files and the command line."""
        assert field_from_name("Q") is QQ
        assert field_from_name("F 3").characteristic == 3
        assert field_from_name("Fp", default_prime=11).characteristic == 11
        with pytest.raises(FieldError):
            field_from_name("R")


class TestMatrix:
    """Test cases for exact matrices."""

    def setup_method(self):
        """Set up test fixtures."""
        self.m = Matrix([[1, 2], [3, 4]])

    def test_determinant_and_inverse(self):
        """Test determinant and inverse of an invertible matrix."""
        assert self.m.determinant() == -2
        inverse = self.m.inverse()
        assert (self.m @ inverse).rows == Matrix.identity(2).rows

    def test_singular_inverse_is_none(self):
        """Test a singular matrix has no inverse."""
        assert Matrix([[1, 2], [2, 4]]).inverse() is None

    def test_rank_and_nullspace(self):
        """Test rank-nullity on a rank one matrix."""
        m = Matrix([[1, 2, 3], [2, 4, 6]])
        assert m.rank() == 1
        kernel = m.nullspace()
        assert len(kernel) == 2
        for v in kernel:
            assert all(x == 0 for x in m.apply(v))

    def test_solve(self):
        """Test a consistent and an inconsistent system."""
        assert self.m.solve([5, 11]) == (Fraction(1), Fraction(2))
        assert Matrix([[1, 1], [1, 1]]).solve([1, 2]) is None

    def test_shape_mismatch(self):
        """Test multiplying incompatible shapes raises."""
        with pytest.raises(AmbientMismatchError):
            self.m @ Matrix([[1, 2, 3]])

    def test_power_and_trace(self):
        """Test repeated squaring against direct multiplication."""
        assert self.m.power(3).rows == (self.m @ self.m @ self.m).rows
        assert self.m.trace() == 5

    def test_block_diagonal(self):
        """Test block sums keep the blocks on the diagonal."""
        b = block_diagonal([self.m, Matrix([[7]])])
        assert b.shape == (3, 3)
        assert b[2, 2] == 7 and b[0, 2] == 0 and b[1, 0] == 3

    def test_rank_matches_numpy_over_q(self):
        """Test exact rank agrees with floating point rank on small integer matrices."""
        rng = np.random.default_rng(7)
        for _ in range(25):
            data = rng.integers(-2, 3, size=(4, 5))
            assert Matrix(data.tolist()).rank() == np.linalg.matrix_rank(data)


class TestSubspace:
    """Test cases for subspace arithmetic."""

    def test_sum_and_intersection(self):
        """Test two planes in Q^3 meet in a line."""
        a = Subspace(3, [[1, 0, 0], [0, 1, 0]])
        b = Subspace(3, [[0, 1, 0], [0, 0, 1]])
        pair = subspace_ops(a, b)
        assert pair.sum.dim == 3
        assert pair.intersection.dim == 1
        assert pair.intersection.contains([0, 5, 0])
        assert not pair.is_direct()

    def test_complement_basis(self):
        """Test a complement completes a basis of the ambient space."""
        a = Subspace(4, [[1, 1, 0, 0]])
        complement = Subspace(4, a.complement_basis())
        assert complement.dim == 3
        assert (a + complement).dim == 4

    def test_coordinates(self):
        """Test coordinates reproduce the vector through combination."""
        a = Subspace(3, [[1, 2, 0], [0, 1, 1]])
        coords = a.coordinates([1, 3, 1])
        assert a.combination(coords) == (1, 3, 1)
        assert a.coordinates([0, 0, 1]) is None

    def test_ambient_mismatch(self):
        """Test subspaces of different ambient spaces do not combine."""
        with pytest.raises(AmbientMismatchError):
            Subspace(2, [[1, 0]]) + Subspace(3, [[1, 0, 0]])

    def test_image(self):
        """Test the image of a subspace under a projection."""
        a = Subspace(3, [[1, 0, 0], [0, 1, 1]])
        projection = Matrix([[1, 0, 0], [0, 1, 0]])
        assert a.image(projection).dim == 2

    def test_dimension_against_brute_force_span(self):
        """Test dim, sum and intersection against enumerated spans over F_3."""
        f3 = PrimeField(3)
        rng = np.random.default_rng(20240611)
        for _ in range(120):
            ambient = int(rng.integers(1, 5))
            first = [tuple(int(x) for x in rng.integers(0, 3, size=ambient)) for _ in range(int(rng.integers(0, 4)))]
            second = [tuple(int(x) for x in rng.integers(0, 3, size=ambient)) for _ in range(int(rng.integers(0, 4)))]
            a, b = Subspace(ambient, first, f3), Subspace(ambient, second, f3)
            span_a, span_b = brute_span(first, 3, ambient), brute_span(second, 3, ambient)
            assert len(span_a) == 3 ** a.dim
            assert len(span_b) == 3 ** b.dim
            assert len(brute_span(first + second, 3, ambient)) == 3 ** (a + b).dim
            assert len(span_a & span_b) == 3 ** a.intersection(b).dim


class TestSparseReducer:
    """Test cases for the sparse echelon reducer."""

    def test_insert_and_contains(self):
        """Test dependent vectors are recognized after insertion."""
        reducer = SparseReducer(QQ, sort_key=lambda k: k)
        assert reducer.insert({"a": QQ(1), "b": QQ(2)}) is not None
        assert reducer.insert({"b": QQ(1)}) is not None
        assert reducer.contains({"a": QQ(3)})
        assert reducer.insert({"a": QQ(1), "b": QQ(1)}) is None
        assert len(reducer) == 2
