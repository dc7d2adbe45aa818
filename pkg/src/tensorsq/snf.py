"""Smith normal form over the integers.

Matrices are plain lists of lists of Python ints, so intermediate entries
never overflow. The pivot rule is fixed (smallest nonzero absolute value,
first in row-major order), which makes every result reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

Matrix = list[list[int]]


def as_matrix(M, cols: int | None = None) -> Matrix:
    """Copy ``M`` (nested sequences or a 2-D array) into a list of int lists."""
    rows = [[int(x) for x in row] for row in M]
    if cols is not None:
        for row in rows:
            if len(row) != cols:
                raise ValueError(f"row of length {len(row)}, expected {cols}")
    elif rows:
        width = len(rows[0])
        if any(len(row) != width for row in rows):
            raise ValueError("ragged matrix")
    return rows


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(A: Matrix, B: Matrix) -> Matrix:
    if not A or not B:
        inner = len(B)
        cols = len(B[0]) if B else 0
        return [[0] * cols for _ in A] if inner == 0 else []
    small = max((abs(x) for row in A for x in row), default=0) < 2**20 and max(
        (abs(x) for row in B for x in row), default=0
    ) < 2**20 and len(B) < 2**20
    if small:
        return np.asarray(A, dtype=np.int64).dot(np.asarray(B, dtype=np.int64)).tolist()
    Bt = list(zip(*B))
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def determinant(A: Matrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = len(A)
    if n == 0:
        return 1
    M = [row[:] for row in A]
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k] != 0:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


@dataclass(frozen=True)
class SNFResult:
    """``U @ M @ V == D`` with ``D`` diagonal, nonnegative, and d1 | d2 | ...

    ``V_inv`` is carried along because changing bases of an abelian group
    needs the inverse column transform.
    """

    D: Matrix
    U: Matrix
    V: Matrix
    V_inv: Matrix

    @property
    def diagonal(self) -> list[int]:
        return [self.D[i][i] for i in range(min(len(self.D), len(self.D[0]) if self.D else 0))]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d != 0)

    def check(self, M: Matrix) -> None:
        """Assert every postcondition against the original matrix ``M``."""
        assert matmul(matmul(self.U, M), self.V) == self.D, "U M V != D"
        # Bareiss is cubic; U and V are products of elementary moves anyway
        if len(self.U) <= 64:
            assert abs(determinant(self.U)) == 1, "U not unimodular"
        if len(self.V) <= 64:
            assert abs(determinant(self.V)) == 1, "V not unimodular"
        assert matmul(self.V, self.V_inv) == identity(len(self.V)), "V_inv wrong"
        diag = self.diagonal
        for i, row in enumerate(self.D):
            for j, x in enumerate(row):
                assert i == j or x == 0, "D not diagonal"
        for a, b in zip(diag, diag[1:]):
            assert a >= 0 and (b % a == 0 if a else b == 0), "divisibility chain broken"


def smith_normal_form(M, *, check: bool = __debug__) -> SNFResult:
    """Smith normal form of an integer matrix, with both transforms."""
    A = as_matrix(M)
    m = len(A)
    n = len(A[0]) if A else 0
    U = identity(m)
    V = identity(n)
    Vi = identity(n)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]
        Vi[i], Vi[j] = Vi[j], Vi[i]

    def add_row(dst, src, q):
        # row_dst += q * row_src
        if q:
            A[dst] = [a + q * b for a, b in zip(A[dst], A[src])]
            U[dst] = [a + q * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, q):
        # col_dst += q * col_src
        if q:
            for row in A:
                row[dst] += q * row[src]
            for row in V:
                row[dst] += q * row[src]
            Vi[src] = [a - q * b for a, b in zip(Vi[src], Vi[dst])]

    for t in range(min(m, n)):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                x = A[i][j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
        if best is None:
            break
        _, i, j = best
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            p = A[t][t]
            for i in range(t + 1, m):
                add_row(i, t, -(A[i][t] // p))
            for j in range(t + 1, n):
                add_col(j, t, -(A[t][j] // p))
            # leftovers in the pivot row/column are smaller than |p|
            cand = [(abs(A[i][t]), 0, i) for i in range(t + 1, m) if A[i][t]]
            cand += [(abs(A[t][j]), 1, j) for j in range(t + 1, n) if A[t][j]]
            if cand:
                _, kind, idx = min(cand)
                if kind == 0:
                    swap_rows(t, idx)
                else:
                    swap_cols(t, idx)
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            U[t] = [-x for x in U[t]]

    res = SNFResult(A, U, V, Vi)
    if check:
        res.check(as_matrix(M))
    return res


def left_kernel(M) -> Matrix:
    """Basis (as rows) of the integer lattice ``{x : x @ M == 0}``."""
    A = as_matrix(M)
    if not A:
        return []
    if not A[0]:
        return identity(len(A))
    res = smith_normal_form(A, check=False)
    return [row[:] for row in res.U[res.rank :]]
