"""Exact rational and integer linear algebra.

Everything in this module (and the package) is exact: rational entries are
`fractions.Fraction`, integer entries are arbitrary-precision `int`.  There is
no floating point and no tolerance anywhere; equality checks are bit-exact.

The three workhorses are `solve_linear` (exact Gaussian elimination, used for
orthogonality corrections against negative-definite Gram matrices),
`smith_normal_form` (used for divisor class group quotients), and
`is_negative_definite` (the numerical contractibility criterion).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import SingularMatrixError

#: The exact rational scalar type used throughout the package.  The stdlib
#: class already enforces lowest terms and a positive denominator.
Rational = Fraction

RationalLike = int | Fraction


def _to_rows(g: Sequence[Sequence[RationalLike]]) -> list[list[Fraction]]:
    rows = [[Fraction(x) for x in row] for row in g]
    if rows and any(len(row) != len(rows[0]) for row in rows):
        raise ValueError("ragged matrix")
    return rows


def solve_linear(
    g: Sequence[Sequence[RationalLike]], b: Sequence[RationalLike]
) -> list[Fraction]:
    """Solve g*x = b exactly; g must be square and nonsingular.

    Raises SingularMatrixError when no unique solution exists, which upstream
    signals a non-contractible curve configuration.
    """
    a = _to_rows(g)
    n = len(a)
    if any(len(row) != n for row in a):
        raise ValueError(f"matrix is not square: {n} rows of length {len(a[0])}")
    rhs = [Fraction(x) for x in b]
    if len(rhs) != n:
        raise ValueError(f"dimension mismatch: {n}x{n} matrix, vector of length {len(rhs)}")

    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            raise SingularMatrixError("matrix is singular")
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            rhs[col], rhs[pivot] = rhs[pivot], rhs[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        rhs[col] *= inv
        for r in range(n):
            if r != col and a[r][col] != 0:
                factor = a[r][col]
                a[r] = [x - factor * y for x, y in zip(a[r], a[col])]
                rhs[r] -= factor * rhs[col]
    return rhs


def invert(g: Sequence[Sequence[RationalLike]]) -> list[list[Fraction]]:
    """Exact inverse of a square nonsingular matrix, column by column."""
    rows = _to_rows(g)
    n = len(rows)
    cols = []
    for j in range(n):
        e = [Fraction(int(i == j)) for i in range(n)]
        cols.append(solve_linear(rows, e))
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def determinant(g: Sequence[Sequence[RationalLike]]) -> Fraction:
    """Exact determinant by Gaussian elimination over the rationals."""
    a = _to_rows(g)
    n = len(a)
    if any(len(row) != n for row in a):
        raise ValueError("matrix is not square")
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            det = -det
        det *= a[col][col]
        inv = 1 / a[col][col]
        for r in range(col + 1, n):
            if a[r][col] != 0:
                factor = a[r][col] * inv
                a[r] = [x - factor * y for x, y in zip(a[r], a[col])]
    return det


def is_negative_definite(g: Sequence[Sequence[RationalLike]]) -> bool:
    """Leading-principal-minor test: the k-th minor must have sign (-1)^k.

    Input must be symmetric (raises ValueError otherwise).  The empty matrix
    is vacuously negative definite, so an empty contraction is always legal.
    """
    a = _to_rows(g)
    n = len(a)
    if any(len(row) != n for row in a):
        raise ValueError("matrix is not square")
    for i in range(n):
        for j in range(i + 1, n):
            if a[i][j] != a[j][i]:
                raise ValueError(f"matrix is not symmetric at ({i},{j})")
    for k in range(1, n + 1):
        minor = determinant([row[:k] for row in a[:k]])
        if minor == 0 or (minor > 0) != (k % 2 == 0):
            return False
    return True


def signature(g: Sequence[Sequence[RationalLike]]) -> tuple[int, int, int]:
    """Inertia (n_plus, n_minus, n_zero) of a symmetric rational matrix.

    Computed by exact congruence diagonalization, so zero leading minors (as
    on the quadric's hyperbolic plane [[0,1],[1,0]]) are handled correctly.
    """
    a = _to_rows(g)
    n = len(a)
    if any(len(row) != n for row in a):
        raise ValueError("matrix is not square")
    for i in range(n):
        for j in range(i + 1, n):
            if a[i][j] != a[j][i]:
                raise ValueError(f"matrix is not symmetric at ({i},{j})")
    plus = minus = zero = 0
    for k in range(n):
        if a[k][k] == 0:
            j = next((j for j in range(k + 1, n) if a[j][k] != 0), None)
            if j is None:
                zero += 1
                continue
            # symmetric row+column addition keeps the congruence class; the
            # factor t makes the new pivot t^2*a[j][j] + 2t*a[j][k] nonzero
            t = 1 if a[j][j] != -2 * a[j][k] else -1
            for m in range(n):
                a[k][m] += t * a[j][m]
            for m in range(n):
                a[m][k] += t * a[m][j]
        d = a[k][k]
        if d > 0:
            plus += 1
        else:
            minus += 1
        for i in range(k + 1, n):
            if a[i][k] != 0:
                factor = a[i][k] / d
                for m in range(n):
                    a[i][m] -= factor * a[k][m]
                for m in range(n):
                    a[m][i] -= factor * a[m][k]
    return plus, minus, zero


@dataclass(frozen=True)
class IntMatrix:
    """Immutable integer matrix, entries in row-major order."""

    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.rows < 0 or self.cols < 0:
            raise ValueError("negative dimensions")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"{self.rows}x{self.cols} matrix needs {self.rows * self.cols} "
                f"entries, got {len(self.entries)}"
            )
        if not all(isinstance(e, int) for e in self.entries):
            raise ValueError("entries must be integers")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "IntMatrix":
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        return cls(len(rows), ncols, tuple(x for row in rows for x in row))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, tuple(int(i == j) for i in range(n) for j in range(n)))

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i * self.cols + j]

    def to_rows(self) -> list[list[int]]:
        return [
            list(self.entries[i * self.cols : (i + 1) * self.cols])
            for i in range(self.rows)
        ]

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError("dimension mismatch in product")
        a, b = self.to_rows(), other.to_rows()
        prod = [
            [sum(a[i][k] * b[k][j] for k in range(self.cols)) for j in range(other.cols)]
            for i in range(self.rows)
        ]
        return IntMatrix.from_rows(prod) if prod else IntMatrix(0, other.cols, ())

    def determinant(self) -> int:
        """Fraction-free Bareiss determinant (square matrices only)."""
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        n = self.rows
        if n == 0:
            return 1
        m = self.to_rows()
        sign = 1
        prev = 1
        for k in range(n - 1):
            if m[k][k] == 0:
                swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
                if swap is None:
                    return 0
                m[k], m[swap] = m[swap], m[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
                m[i][k] = 0
            prev = m[k][k]
        return sign * m[n - 1][n - 1]

    def diagonal(self) -> tuple[int, ...]:
        return tuple(self[i, i] for i in range(min(self.rows, self.cols)))


@dataclass(frozen=True)
class SnfDecomposition:
    """U*M*V = D with U, V unimodular and D in Smith normal form."""

    u: IntMatrix
    d: IntMatrix
    v: IntMatrix

    def invariant_factors(self) -> tuple[int, ...]:
        return tuple(x for x in self.d.diagonal() if x != 0)

    def rank(self) -> int:
        return len(self.invariant_factors())


def smith_normal_form(m: IntMatrix | Sequence[Sequence[int]]) -> SnfDecomposition:
    """Smith normal form with unimodular transforms tracked.

    Normalization: diagonal entries nonnegative, each dividing the next;
    pivoting always brings the smallest nonzero absolute value to the corner.
    The returned decomposition is self-validated (U*M*V = D, det U, det V
    in {1, -1}), so a bug here raises rather than propagating silently.
    """
    if not isinstance(m, IntMatrix):
        m = IntMatrix.from_rows(m)
    a = m.to_rows()
    nrows, ncols = m.rows, m.cols
    u = IntMatrix.identity(nrows).to_rows()
    v = IntMatrix.identity(ncols).to_rows()

    def row_op(i: int, k: int, q: int) -> None:  # row i -= q * row k
        a[i] = [x - q * y for x, y in zip(a[i], a[k])]
        u[i] = [x - q * y for x, y in zip(u[i], u[k])]

    def col_op(j: int, k: int, q: int) -> None:  # col j -= q * col k
        for row in a:
            row[j] -= q * row[k]
        for row in v:
            row[j] -= q * row[k]

    def swap_rows(i: int, k: int) -> None:
        a[i], a[k] = a[k], a[i]
        u[i], u[k] = u[k], u[i]

    def swap_cols(j: int, k: int) -> None:
        for row in a:
            row[j], row[k] = row[k], row[j]
        for row in v:
            row[j], row[k] = row[k], row[j]

    t = 0
    while t < min(nrows, ncols):
        # bring the smallest nonzero absolute value of the submatrix to (t, t)
        best = None
        for i in range(t, nrows):
            for j in range(t, ncols):
                if a[i][j] != 0 and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        while True:
            i, j = best
            if i != t:
                swap_rows(i, t)
            if j != t:
                swap_cols(j, t)
            dirty = False
            for i in range(t + 1, nrows):
                if a[i][t] != 0:
                    row_op(i, t, a[i][t] // a[t][t])
                    dirty = dirty or a[i][t] != 0
            for j in range(t + 1, ncols):
                if a[t][j] != 0:
                    col_op(j, t, a[t][j] // a[t][t])
                    dirty = dirty or a[t][j] != 0
            if dirty:
                best = min(
                    ((i, j) for i in range(t, nrows) for j in range(t, ncols) if a[i][j] != 0),
                    key=lambda ij: abs(a[ij[0]][ij[1]]),
                )
                continue
            # pivot must divide the remaining submatrix for the divisor chain
            offender = next(
                (
                    (i, j)
                    for i in range(t + 1, nrows)
                    for j in range(t + 1, ncols)
                    if a[i][j] % a[t][t] != 0
                ),
                None,
            )
            if offender is None:
                break
            row_op(t, offender[0], -1)  # fold the offending row into the pivot row
            best = (t, t)
        t += 1

    for k in range(min(nrows, ncols)):
        if a[k][k] < 0:
            a[k] = [-x for x in a[k]]
            u[k] = [-x for x in u[k]]

    u_m = IntMatrix.from_rows(u) if u else IntMatrix(0, 0, ())
    v_m = IntMatrix.from_rows(v) if v else IntMatrix(0, 0, ())
    d_m = IntMatrix.from_rows(a) if a else IntMatrix(0, ncols, ())
    _validate_snf(m, u_m, d_m, v_m)
    return SnfDecomposition(u_m, d_m, v_m)


def _validate_snf(m: IntMatrix, u: IntMatrix, d: IntMatrix, v: IntMatrix) -> None:
    if u.rows and abs(u.determinant()) != 1:
        raise AssertionError("left transform is not unimodular")
    if v.rows and abs(v.determinant()) != 1:
        raise AssertionError("right transform is not unimodular")
    if (u @ m @ v).entries != d.entries:
        raise AssertionError("U*M*V != D")
    diag = d.diagonal()
    for i in range(d.rows):
        for j in range(d.cols):
            if i != j and d[i, j] != 0:
                raise AssertionError("D is not diagonal")
    if any(x < 0 for x in diag):
        raise AssertionError("D has a negative entry")
    for x, y in zip(diag, diag[1:]):
        if x != 0 and y % x != 0:
            raise AssertionError("divisibility chain broken")
        if x == 0 and y != 0:
            raise AssertionError("zero before nonzero on the diagonal")
