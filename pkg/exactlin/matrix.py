"""
Dense Exact Matrices

Row-major matrices over a Field with reduced row echelon form as the
workhorse for ranks, kernels and linear systems.
"""

from typing import Any, Iterable, List, Optional, Sequence, Tuple

from errors import AmbientMismatchError
from exactlin.field import QQ, Field, Scalar

Vector = Tuple[Scalar, ...]


def rref_rows(rows: List[List[Scalar]], ncols: int, field: Field) -> Tuple[List[List[Scalar]], List[int]]:
    """
    Reduce rows in place to reduced row echelon form.

    Args:
        rows: Mutable list of row lists
        ncols: Number of columns
        field: Scalar field

    Returns:
        Tuple of (rows, pivot column indices); zero rows end up at the bottom
    """
    one = field.one
    pivots: List[int] = []
    nrows = len(rows)
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        pivot = None
        for i in range(r, nrows):
            if rows[i][c] != 0:
                pivot = i
                break
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        lead = rows[r][c]
        if lead != one:
            inv = one / lead
            rows[r] = [x * inv for x in rows[r]]
        prow = rows[r]
        for i in range(nrows):
            if i != r:
                f = rows[i][c]
                if f != 0:
                    rows[i] = [a - f * b if b != 0 else a for a, b in zip(rows[i], prow)]
        pivots.append(c)
        r += 1
    return rows, pivots


class Matrix:
    """Immutable matrix with exact entries."""

    __slots__ = ("field", "nrows", "ncols", "rows")

    def __init__(self, rows: Iterable[Sequence[Any]], ncols: Optional[int] = None, field: Field = QQ):
        self.field = field
        data = tuple(tuple(field(x) for x in row) for row in rows)
        self.nrows = len(data)
        if ncols is None:
            if not data:
                raise AmbientMismatchError("column count required for a matrix without rows")
            ncols = len(data[0])
        for row in data:
            if len(row) != ncols:
                raise AmbientMismatchError(f"row of length {len(row)} in a matrix with {ncols} columns")
        self.ncols = ncols
        self.rows = data

    @classmethod
    def _raw(cls, rows: Tuple[Tuple[Scalar, ...], ...], ncols: int, field: Field) -> "Matrix":
        m = cls.__new__(cls)
        m.field = field
        m.nrows = len(rows)
        m.ncols = ncols
        m.rows = rows
        return m

    @classmethod
    def zeros(cls, nrows: int, ncols: int, field: Field = QQ) -> "Matrix":
        zero = field.zero
        return cls._raw(tuple((zero,) * ncols for _ in range(nrows)), ncols, field)

    @classmethod
    def identity(cls, n: int, field: Field = QQ) -> "Matrix":
        zero, one = field.zero, field.one
        return cls._raw(tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n)), n, field)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[Scalar]], nrows: int, field: Field = QQ) -> "Matrix":
        if not columns:
            return cls.zeros(nrows, 0, field)
        return cls._raw(tuple(tuple(col[i] for col in columns) for i in range(nrows)), len(columns), field)

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.nrows, self.ncols)

    def __getitem__(self, index: Tuple[int, int]) -> Scalar:
        i, j = index
        return self.rows[i][j]

    def column(self, j: int) -> Vector:
        return tuple(row[j] for row in self.rows)

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.rows for x in row)

    def transpose(self) -> "Matrix":
        if self.nrows == 0:
            return Matrix._raw(tuple(() for _ in range(self.ncols)), 0, self.field)
        return Matrix._raw(tuple(tuple(col) for col in zip(*self.rows)), self.nrows, self.field)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise AmbientMismatchError(f"cannot multiply {self.shape} by {other.shape}")
        zero = self.field.zero
        cols = other.transpose().rows
        out = []
        for row in self.rows:
            nz = [(k, x) for k, x in enumerate(row) if x != 0]
            new_row = []
            for col in cols:
                acc = zero
                for k, x in nz:
                    y = col[k]
                    if y != 0:
                        acc = acc + x * y
                new_row.append(acc)
            out.append(tuple(new_row))
        return Matrix._raw(tuple(out), other.ncols, self.field)

    def apply(self, vector: Sequence[Scalar]) -> Vector:
        """Multiply by a column vector."""
        if len(vector) != self.ncols:
            raise AmbientMismatchError(f"vector of length {len(vector)} for {self.shape} matrix")
        zero = self.field.zero
        nz = [(k, x) for k, x in enumerate(vector) if x != 0]
        out = []
        for row in self.rows:
            acc = zero
            for k, x in nz:
                y = row[k]
                if y != 0:
                    acc = acc + y * x
            out.append(acc)
        return tuple(out)

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise AmbientMismatchError(f"cannot add {self.shape} and {other.shape}")
        return Matrix._raw(tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)),
                           self.ncols, self.field)

    def __sub__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise AmbientMismatchError(f"cannot subtract {self.shape} and {other.shape}")
        return Matrix._raw(tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)),
                           self.ncols, self.field)

    def scale(self, c: Scalar) -> "Matrix":
        return Matrix._raw(tuple(tuple(c * a for a in r) for r in self.rows), self.ncols, self.field)

    def __eq__(self, other: Any) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self.rows == other.rows

    def __hash__(self) -> int:
        return hash((self.shape, self.rows))

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(x) for x in row) for row in self.rows)
        return f"Matrix({self.nrows}x{self.ncols}: [{body}])"

    def to_lists(self) -> List[List[str]]:
        return [[str(x) for x in row] for row in self.rows]

    def rref(self) -> Tuple["Matrix", List[int]]:
        reduced, pivots = rref_rows([list(r) for r in self.rows], self.ncols, self.field)
        return Matrix._raw(tuple(tuple(r) for r in reduced), self.ncols, self.field), pivots

    def rank(self) -> int:
        return len(self.rref()[1])

    def nullspace(self) -> List[Vector]:
        """Basis of {x : self x = 0}, one vector per free column."""
        reduced, pivots = rref_rows([list(r) for r in self.rows], self.ncols, self.field)
        pivot_set = set(pivots)
        zero, one = self.field.zero, self.field.one
        basis = []
        for free in range(self.ncols):
            if free in pivot_set:
                continue
            vec = [zero] * self.ncols
            vec[free] = one
            for i, p in enumerate(pivots):
                vec[p] = -reduced[i][free]
            basis.append(tuple(vec))
        return basis

    def solve(self, rhs: Sequence[Scalar]) -> Optional[Vector]:
        """
        Solve self x = rhs.

        Args:
            rhs: Right-hand side of length nrows

        Returns:
            A particular solution (free variables set to zero) or None
        """
        if len(rhs) != self.nrows:
            raise AmbientMismatchError(f"right-hand side of length {len(rhs)} for {self.shape} matrix")
        rows = [list(r) + [self.field(b)] for r, b in zip(self.rows, rhs)]
        reduced, pivots = rref_rows(rows, self.ncols + 1, self.field)
        if pivots and pivots[-1] == self.ncols:
            return None
        solution = [self.field.zero] * self.ncols
        for i, p in enumerate(pivots):
            solution[p] = reduced[i][self.ncols]
        return tuple(solution)

    def determinant(self) -> Scalar:
        if self.nrows != self.ncols:
            raise AmbientMismatchError(f"determinant of non-square {self.shape} matrix")
        rows = [list(r) for r in self.rows]
        n = self.nrows
        det = self.field.one
        for c in range(n):
            pivot = next((i for i in range(c, n) if rows[i][c] != 0), None)
            if pivot is None:
                return self.field.zero
            if pivot != c:
                rows[c], rows[pivot] = rows[pivot], rows[c]
                det = -det
            lead = rows[c][c]
            det = det * lead
            for i in range(c + 1, n):
                f = rows[i][c]
                if f != 0:
                    ratio = f / lead
                    rows[i] = [a - ratio * b for a, b in zip(rows[i], rows[c])]
        return det

    def inverse(self) -> Optional["Matrix"]:
        if self.nrows != self.ncols:
            raise AmbientMismatchError(f"inverse of non-square {self.shape} matrix")
        n = self.nrows
        ident = Matrix.identity(n, self.field)
        rows = [list(r) + list(e) for r, e in zip(self.rows, ident.rows)]
        reduced, pivots = rref_rows(rows, 2 * n, self.field)
        if pivots[:n] != list(range(n)):
            return None
        return Matrix._raw(tuple(tuple(r[n:]) for r in reduced), n, self.field)

    def hstack(self, other: "Matrix") -> "Matrix":
        if self.nrows != other.nrows:
            raise AmbientMismatchError(f"cannot hstack {self.shape} and {other.shape}")
        return Matrix._raw(tuple(r + s for r, s in zip(self.rows, other.rows)), self.ncols + other.ncols, self.field)

    def vstack(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.ncols:
            raise AmbientMismatchError(f"cannot vstack {self.shape} and {other.shape}")
        return Matrix._raw(self.rows + other.rows, self.ncols, self.field)

    def power(self, k: int) -> "Matrix":
        result = Matrix.identity(self.nrows, self.field)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def trace(self) -> Scalar:
        acc = self.field.zero
        for i in range(min(self.nrows, self.ncols)):
            acc = acc + self.rows[i][i]
        return acc


def rref(m: Matrix) -> Tuple[Matrix, List[int]]:
    """Reduced row echelon form of m and its pivot columns."""
    return m.rref()


def block_diagonal(blocks: Sequence[Matrix], field: Field = QQ) -> Matrix:
    nrows = sum(b.nrows for b in blocks)
    ncols = sum(b.ncols for b in blocks)
    zero = field.zero
    out = []
    col_offset = 0
    for b in blocks:
        for row in b.rows:
            out.append((zero,) * col_offset + row + (zero,) * (ncols - col_offset - b.ncols))
        col_offset += b.ncols
    return Matrix._raw(tuple(out), ncols, field) if nrows else Matrix.zeros(0, ncols, field)
