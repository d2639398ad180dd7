"""Exact integer linear algebra: Smith normal form and Diophantine solving.

Matrices are plain lists of rows of Python ints, so entries never overflow.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

IntMatrix = list[list[int]]


def zeros(rows: int, cols: int) -> IntMatrix:
    return [[0] * cols for _ in range(rows)]


def identity(n: int) -> IntMatrix:
    m = zeros(n, n)
    for i in range(n):
        m[i][i] = 1
    return m


def shape(a: Sequence[Sequence[int]], cols: Optional[int] = None) -> tuple[int, int]:
    """Row and column counts; `cols` disambiguates matrices with no rows."""
    rows = len(a)
    if rows:
        return rows, len(a[0])
    return 0, cols or 0


def matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]], inner: Optional[int] = None,
           cols: Optional[int] = None) -> IntMatrix:
    n = len(a)
    k = len(b) if inner is None else inner
    m = len(b[0]) if b else (cols or 0)
    out = zeros(n, m)
    for i in range(n):
        row = a[i]
        acc = out[i]
        for t in range(k):
            x = row[t]
            if x:
                brow = b[t]
                for j in range(m):
                    if brow[j]:
                        acc[j] += x * brow[j]
    return out


def transpose(a: Sequence[Sequence[int]], cols: Optional[int] = None) -> IntMatrix:
    rows, c = shape(a, cols)
    return [[a[i][j] for i in range(rows)] for j in range(c)]


def vecmat(v: Sequence[int], a: Sequence[Sequence[int]], cols: Optional[int] = None) -> list[int]:
    """Row vector times matrix."""
    _, c = shape(a, cols)
    out = [0] * c
    for x, row in zip(v, a):
        if x:
            for j, y in enumerate(row):
                if y:
                    out[j] += x * y
    return out


def matvec(a: Sequence[Sequence[int]], v: Sequence[int]) -> list[int]:
    return [sum(x * y for x, y in zip(row, v) if x and y) for row in a]


def determinant(a: Sequence[Sequence[int]]) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = len(a)
    if n == 0:
        return 1
    m = [list(r) for r in a]
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k]), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


@dataclass(frozen=True)
class SnfDecomposition:
    """D = S U T with S, T unimodular and D diagonal, d_11 | d_22 | ..."""

    S: IntMatrix
    D: IntMatrix
    T: IntMatrix
    rows: int
    cols: int

    @property
    def diagonal(self) -> list[int]:
        return [self.D[i][i] for i in range(min(self.rows, self.cols))]

    @property
    def rank(self) -> int:
        return sum(1 for x in self.diagonal if x)


def smith_normal_form(u: Sequence[Sequence[int]], cols: Optional[int] = None) -> SnfDecomposition:
    """Smith normal form with transformation matrices.

    Pivots on the nonzero entry of least absolute value (ties broken by the
    first in row-major order), so the output is a deterministic function of
    the input.
    """
    rows, ncols = shape(u, cols)
    d = [list(map(int, r)) for r in u]
    s = identity(rows)
    t = identity(ncols)

    def swap_rows(i, j):
        if i != j:
            d[i], d[j] = d[j], d[i]
            s[i], s[j] = s[j], s[i]

    def swap_cols(i, j):
        if i != j:
            for row in d:
                row[i], row[j] = row[j], row[i]
            for row in t:
                row[i], row[j] = row[j], row[i]

    def add_row(src, dst, q):
        # row[dst] -= q * row[src]
        rs, rd = d[src], d[dst]
        for j in range(ncols):
            if rs[j]:
                rd[j] -= q * rs[j]
        ss, sd = s[src], s[dst]
        for j in range(rows):
            if ss[j]:
                sd[j] -= q * ss[j]

    def add_col(src, dst, q):
        # col[dst] -= q * col[src]
        for row in d:
            if row[src]:
                row[dst] -= q * row[src]
        for row in t:
            if row[src]:
                row[dst] -= q * row[src]

    def negate_row(i):
        d[i] = [-x for x in d[i]]
        s[i] = [-x for x in s[i]]

    for k in range(min(rows, ncols)):
        while True:
            best = None
            for i in range(k, rows):
                row = d[i]
                for j in range(k, ncols):
                    x = row[j]
                    if x and (best is None or abs(x) < best[0]):
                        best = (abs(x), i, j)
                        if best[0] == 1:
                            break
                if best is not None and best[0] == 1:
                    break
            if best is None:
                break
            _, pi, pj = best
            swap_rows(k, pi)
            swap_cols(k, pj)
            p = d[k][k]
            done = True
            for i in range(k + 1, rows):
                if d[i][k]:
                    add_row(k, i, d[i][k] // p)
                    if d[i][k]:
                        done = False
            for j in range(k + 1, ncols):
                if d[k][j]:
                    add_col(k, j, d[k][j] // p)
                    if d[k][j]:
                        done = False
            if not done:
                continue
            # pivot isolated; enforce divisibility of the remaining block
            bad = next(((i, j) for i in range(k + 1, rows) for j in range(k + 1, ncols)
                        if d[i][j] % p), None)
            if bad is None:
                break
            add_row(bad[0], k, -1)
        if d[k][k] < 0:
            negate_row(k)
    return SnfDecomposition(s, d, t, rows, ncols)


class LinearSolver:
    """Repeated solves of A x = b for a fixed integer matrix A."""

    def __init__(self, a: Sequence[Sequence[int]], cols: Optional[int] = None):
        self.rows, self.cols = shape(a, cols)
        self.snf = smith_normal_form(a, self.cols)
        diag = self.snf.diagonal
        self.rank = sum(1 for x in diag if x)
        self._diag = diag[: self.rank]
        t = self.snf.T
        self.kernel = [[t[r][j] for r in range(self.cols)] for j in range(self.rank, self.cols)]

    def solve(self, b: Sequence[int]) -> Optional[list[int]]:
        """Canonical particular solution (free coordinates zero), or None."""
        if len(b) != self.rows:
            raise ValueError("right-hand side has wrong length")
        sb = matvec(self.snf.S, b) if self.rows else []
        y = [0] * self.cols
        for i, x in enumerate(sb):
            if i < self.rank:
                q, r = divmod(x, self._diag[i])
                if r:
                    return None
                y[i] = q
            elif x:
                return None
        return matvec(self.snf.T, y) if self.cols else []


def solve_linear(a: Sequence[Sequence[int]], b: Sequence[int],
                 cols: Optional[int] = None) -> tuple[Optional[list[int]], list[list[int]]]:
    """Solve A x = b over the integers.

    Returns a particular solution (or None when there is none) together with
    a basis of the integer kernel of A.
    """
    solver = LinearSolver(a, cols)
    return solver.solve(b), solver.kernel


def left_kernel(a: Sequence[Sequence[int]], cols: Optional[int] = None) -> list[list[int]]:
    """Basis of {x : x A = 0}."""
    rows, c = shape(a, cols)
    return LinearSolver(transpose(a, c), rows).kernel
