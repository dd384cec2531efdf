"""Exact linear algebra over the rationals.

Everything in this package reduces to dense rational matrices.  This module
provides reduced row echelon form, kernel bases and linear solves; no
floating point is used anywhere, so every downstream result is exact.

Matrices act on column vectors: a matrix with ``rows`` rows and ``cols``
columns represents a linear map from a ``cols``-dimensional space to a
``rows``-dimensional one.  Vectors are plain lists of ``Fraction``.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, List, Optional, Sequence

Rat = Fraction


def rat(x) -> Fraction:
    """Coerce an int, string like ``"2/3"`` or Fraction to a Fraction."""
    if type(x) is Fraction:
        return x
    return Fraction(x)


class Mat:
    """A dense rational matrix."""

    __slots__ = ("rows", "cols", "data", "_rref")

    def __init__(self, data: Sequence[Sequence], rows: Optional[int] = None,
                 cols: Optional[int] = None):
        data = [[rat(x) for x in row] for row in data]
        if rows is None:
            rows = len(data)
        if cols is None:
            cols = len(data[0]) if data else 0
        if len(data) != rows or any(len(r) != cols for r in data):
            raise ValueError("inconsistent matrix shape")
        self.rows = rows
        self.cols = cols
        self.data = data
        self._rref = None

    # -- constructors -------------------------------------------------

    @staticmethod
    def zeros(rows: int, cols: int) -> "Mat":
        return Mat([[Fraction(0)] * cols for _ in range(rows)], rows, cols)

    @staticmethod
    def identity(n: int) -> "Mat":
        m = Mat.zeros(n, n)
        for i in range(n):
            m.data[i][i] = Fraction(1)
        return m

    @staticmethod
    def from_cols(cols: Sequence[Sequence], nrows: int) -> "Mat":
        """Build a matrix whose columns are the given vectors."""
        cols = list(cols)
        m = Mat.zeros(nrows, len(cols))
        for j, c in enumerate(cols):
            if len(c) != nrows:
                raise ValueError("column length mismatch")
            for i, x in enumerate(c):
                m.data[i][j] = rat(x)
        return m

    # -- basics -------------------------------------------------------

    def copy(self) -> "Mat":
        return Mat([row[:] for row in self.data], self.rows, self.cols)

    def __eq__(self, other):
        return (isinstance(other, Mat) and self.rows == other.rows
                and self.cols == other.cols and self.data == other.data)

    def __repr__(self):
        return f"Mat({self.rows}x{self.cols})"

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.data for x in row)

    def col(self, j: int) -> List[Fraction]:
        return [self.data[i][j] for i in range(self.rows)]

    def columns(self) -> List[List[Fraction]]:
        return [self.col(j) for j in range(self.cols)]

    def transpose(self) -> "Mat":
        return Mat([[self.data[i][j] for i in range(self.rows)]
                    for j in range(self.cols)], self.cols, self.rows)

    def mul(self, other: "Mat") -> "Mat":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} * "
                             f"{other.rows}x{other.cols}")
        out = Mat.zeros(self.rows, other.cols)
        for i in range(self.rows):
            ai = self.data[i]
            oi = out.data[i]
            for k in range(self.cols):
                x = ai[k]
                if x:
                    bk = other.data[k]
                    for j in range(other.cols):
                        if bk[j]:
                            oi[j] += x * bk[j]
        return out

    def __matmul__(self, other: "Mat") -> "Mat":
        return self.mul(other)

    def apply(self, vec: Sequence) -> List[Fraction]:
        if len(vec) != self.cols:
            raise ValueError("vector length mismatch")
        return [sum((self.data[i][j] * vec[j] for j in range(self.cols)
                     if vec[j]), Fraction(0)) for i in range(self.rows)]

    def add(self, other: "Mat") -> "Mat":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch in add")
        return Mat([[a + b for a, b in zip(r1, r2)]
                    for r1, r2 in zip(self.data, other.data)],
                   self.rows, self.cols)

    def sub(self, other: "Mat") -> "Mat":
        return self.add(other.scale(-1))

    def scale(self, c) -> "Mat":
        c = rat(c)
        return Mat([[c * x for x in row] for row in self.data],
                   self.rows, self.cols)

    # -- elimination ----------------------------------------------------

    def rref(self):
        """Reduced row echelon form.

        Returns ``(R, rank, pivots)`` where pivots are the pivot column
        indices in increasing order.  Pivoting is deterministic: the first
        row with a nonzero entry in the current column is used.
        """
        if self._rref is not None:
            return self._rref
        R = [row[:] for row in self.data]
        pivots: List[int] = []
        r = 0
        for c in range(self.cols):
            if r == self.rows:
                break
            sel = None
            for i in range(r, self.rows):
                if R[i][c]:
                    sel = i
                    break
            if sel is None:
                continue
            R[r], R[sel] = R[sel], R[r]
            inv = 1 / R[r][c]
            R[r] = [x * inv for x in R[r]]
            for i in range(self.rows):
                if i != r and R[i][c]:
                    f = R[i][c]
                    R[i] = [a - f * b for a, b in zip(R[i], R[r])]
            pivots.append(c)
            r += 1
        self._rref = (Mat(R, self.rows, self.cols), r, tuple(pivots))
        return self._rref

    def rank(self) -> int:
        return self.rref()[1]

    def kernel_basis(self) -> List[List[Fraction]]:
        """Basis of the right kernel, in deterministic free-column order."""
        R, rank, pivots = self.rref()
        pivset = set(pivots)
        free = [j for j in range(self.cols) if j not in pivset]
        basis = []
        for f in free:
            v = [Fraction(0)] * self.cols
            v[f] = Fraction(1)
            for i, p in enumerate(pivots):
                v[p] = -R.data[i][f]
            basis.append(v)
        return basis

    def solve(self, b: Sequence) -> Optional[List[Fraction]]:
        """One solution x of self * x = b, or None if inconsistent."""
        sols = self.solve_many([list(b)])
        return None if sols is None else sols[0]

    def solve_many(self, bs: Sequence[Sequence]) -> Optional[List[List[Fraction]]]:
        """Solve self * x = b for several right-hand sides at once.

        Returns None if any of the systems is inconsistent.  Elimination
        pivots only on coefficient columns, so the right-hand sides ride
        along untouched.
        """
        bs = [[rat(x) for x in b] for b in bs]
        k = len(bs)
        if any(len(b) != self.rows for b in bs):
            raise ValueError("rhs length mismatch")
        R = [self.data[i][:] + [b[i] for b in bs] for i in range(self.rows)]
        pivots: List[int] = []
        r = 0
        for c in range(self.cols):
            if r == self.rows:
                break
            sel = None
            for i in range(r, self.rows):
                if R[i][c]:
                    sel = i
                    break
            if sel is None:
                continue
            R[r], R[sel] = R[sel], R[r]
            inv = 1 / R[r][c]
            R[r] = [x * inv for x in R[r]]
            for i in range(self.rows):
                if i != r and R[i][c]:
                    f = R[i][c]
                    R[i] = [a - f * b for a, b in zip(R[i], R[r])]
            pivots.append(c)
            r += 1
        # rows with zero coefficient part must have zero rhs part
        for i in range(r, self.rows):
            if any(R[i][self.cols + t] != 0 for t in range(k)):
                return None
        sols = []
        for t in range(k):
            x = [Fraction(0)] * self.cols
            for i, p in enumerate(pivots):
                x[p] = R[i][self.cols + t]
            sols.append(x)
        return sols

    def is_invertible(self) -> bool:
        return self.rows == self.cols and self.rank() == self.rows

    def inverse(self) -> "Mat":
        if self.rows != self.cols:
            raise ValueError("not square")
        sols = self.solve_many(Mat.identity(self.rows).transpose().data)
        if sols is None or self.rank() != self.rows:
            raise ValueError("matrix not invertible")
        return Mat.from_cols(sols, self.rows)


def hstack(mats: Sequence[Mat]) -> Mat:
    mats = list(mats)
    if not mats:
        raise ValueError("hstack of nothing")
    rows = mats[0].rows
    if any(m.rows != rows for m in mats):
        raise ValueError("row count mismatch in hstack")
    data = [sum((m.data[i] for m in mats), []) for i in range(rows)]
    return Mat(data, rows, sum(m.cols for m in mats))


def vstack(mats: Sequence[Mat]) -> Mat:
    mats = list(mats)
    if not mats:
        raise ValueError("vstack of nothing")
    cols = mats[0].cols
    if any(m.cols != cols for m in mats):
        raise ValueError("column count mismatch in vstack")
    data = [row[:] for m in mats for row in m.data]
    return Mat(data, sum(m.rows for m in mats), cols)


def block_diag(mats: Sequence[Mat]) -> Mat:
    rows = sum(m.rows for m in mats)
    cols = sum(m.cols for m in mats)
    out = Mat.zeros(rows, cols)
    r = c = 0
    for m in mats:
        for i in range(m.rows):
            for j in range(m.cols):
                out.data[r + i][c + j] = m.data[i][j]
        r += m.rows
        c += m.cols
    return out


def col_space_basis(m: Mat) -> Mat:
    """Matrix whose columns are an independent subset of m's columns."""
    _, _, pivots = m.rref()
    return Mat.from_cols([m.col(j) for j in pivots], m.rows)


def span_contains(basis: Mat, vec: Sequence) -> bool:
    """Whether vec lies in the column space of basis."""
    return basis.solve(list(vec)) is not None


def span_rank(vectors: Sequence[Sequence], dim: int) -> int:
    if not vectors:
        return 0
    return Mat.from_cols(vectors, dim).rank()


def echelon_cols(vectors: Sequence[Sequence], dim: int) -> Mat:
    """Deterministic basis (as columns) of the span of the vectors."""
    if not vectors:
        return Mat.zeros(dim, 0)
    m = Mat.from_cols(vectors, dim)
    # reduce the transpose: its nonzero rows give an echelon basis
    R, rank, _ = m.transpose().rref()
    return Mat.from_cols([R.data[i] for i in range(rank)], dim)
