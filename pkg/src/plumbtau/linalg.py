"""Exact integer and rational linear algebra.

All computations are over arbitrary-precision integers or
``fractions.Fraction``; nothing here ever touches floating point.
Matrices are dense lists of row lists, which is plenty for the
small symmetric forms this package works with.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Vector = Sequence[int]
IntMatrix = Sequence[Sequence[int]]
RatMatrix = Sequence[Sequence[Fraction]]


class SingularMatrixError(ValueError):
    """Raised when an operation needs an invertible matrix; carries det = 0."""

    def __init__(self, message: str = "matrix is singular"):
        super().__init__(message)
        self.det = 0


def _check_square(m: IntMatrix) -> int:
    n = len(m)
    if n == 0:
        return 0
    if any(len(row) != n for row in m):
        raise ValueError("matrix is not square")
    return n


def _check_symmetric(m: IntMatrix) -> int:
    n = _check_square(m)
    for i in range(n):
        for j in range(i + 1, n):
            if m[i][j] != m[j][i]:
                raise ValueError(f"matrix is not symmetric at ({i},{j})")
    return n


def identity(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(a, b):
    assert len(a[0]) == len(b), "inner dimensions must agree"
    cols = len(b[0])
    return [[sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(cols)]
            for i in range(len(a))]


def mat_vec(m, v):
    assert len(m[0]) == len(v), "dimension mismatch"
    return [sum(m[i][j] * v[j] for j in range(len(v))) for i in range(len(m))]


def det(m: IntMatrix) -> int:
    """Exact determinant by fraction-free Bareiss elimination.

    Intermediate values stay integral: after step k every entry is a
    k-th leading minor of the original matrix, so the divisions below
    are exact.  Empty matrices have det 1 by convention.
    """
    n = _check_square(m)
    if n == 0:
        return 1
    a = [list(map(int, row)) for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def _minor(m: IntMatrix, i: int, j: int) -> list[list[int]]:
    return [[m[r][c] for c in range(len(m)) if c != j]
            for r in range(len(m)) if r != i]


def adjugate(m: IntMatrix) -> list[list[int]]:
    """Transposed cofactor matrix; adj(A)·A = det(A)·I exactly."""
    n = _check_square(m)
    if n == 0:
        return []
    if n == 1:
        return [[1]]
    adj = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            c = det(_minor(m, i, j))
            adj[j][i] = c if (i + j) % 2 == 0 else -c
    return adj


def inverse(m: IntMatrix) -> list[list[Fraction]]:
    """Exact inverse, computed as adjugate over determinant."""
    n = _check_square(m)
    d = det(m)
    if d == 0:
        raise SingularMatrixError()
    adj = adjugate(m)
    return [[Fraction(adj[i][j], d) for j in range(n)] for i in range(n)]


def is_negative_definite(m: IntMatrix) -> bool:
    """True iff (-1)^k times the k-th leading principal minor is positive for all k."""
    n = _check_symmetric(m)
    for k in range(1, n + 1):
        minor_k = det([row[:k] for row in m[:k]])
        if (-1) ** k * minor_k <= 0:
            return False
    return True


def pair(qinv: RatMatrix, u: Vector, v: Vector) -> Fraction:
    """The bilinear pairing u^T qinv v, exact."""
    n = len(qinv)
    if len(u) != n or len(v) != n or any(len(row) != n for row in qinv):
        raise ValueError("dimension mismatch in pairing")
    total = Fraction(0)
    for i in range(n):
        if u[i] == 0:
            continue
        total += u[i] * sum(qinv[i][j] * v[j] for j in range(n))
    return total


def solve_exact(m, b) -> list[Fraction]:
    """Solve m·x = b exactly over the rationals; m must be nonsingular."""
    n = _check_square(m)
    a = [[Fraction(m[i][j]) for j in range(n)] + [Fraction(b[i])] for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            raise SingularMatrixError()
        a[col], a[piv] = a[piv], a[col]
        pv = a[col][col]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col] / pv
                for c in range(col, n + 1):
                    a[r][c] -= f * a[col][c]
    return [a[i][n] / a[i][i] for i in range(n)]


def in_image_of(lattice_gen: IntMatrix, v: Vector) -> bool:
    """Decide v ∈ lattice_gen · Z^n for a nonsingular integer matrix.

    Solves the system exactly over Q and checks the solution for
    integrality, which is equivalent to a Hermite-form divisibility
    test when the generator matrix has full rank.
    """
    x = solve_exact(lattice_gen, v)
    return all(xi.denominator == 1 for xi in x)


def smith_normal_form(m: IntMatrix):
    """Integer Smith normal form.

    Returns (s, d, t) with s·m·t = d, s and t unimodular, and d diagonal
    with non-negative entries d_1 | d_2 | ... .
    """
    rows = len(m)
    cols = len(m[0]) if rows else 0
    a = [list(map(int, row)) for row in m]
    s = identity(rows)
    t = identity(cols)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        s[i], s[j] = s[j], s[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in t:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, q):
        # row dst += q * row src
        for c in range(cols):
            a[dst][c] += q * a[src][c]
        for c in range(rows):
            s[dst][c] += q * s[src][c]

    def add_col(src, dst, q):
        for r in range(rows):
            a[r][dst] += q * a[r][src]
        for r in range(cols):
            t[r][dst] += q * t[r][src]

    k = 0
    while k < min(rows, cols):
        # move a minimal nonzero entry of the trailing block to (k, k)
        best = None
        for i in range(k, rows):
            for j in range(k, cols):
                if a[i][j] != 0 and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(k, best[0])
        swap_cols(k, best[1])
        dirty = True
        while dirty:
            dirty = False
            for i in range(k + 1, rows):
                if a[i][k] != 0:
                    add_row(k, i, -(a[i][k] // a[k][k]))
                    if a[i][k] != 0:
                        swap_rows(k, i)
                        dirty = True
            for j in range(k + 1, cols):
                if a[k][j] != 0:
                    add_col(k, j, -(a[k][j] // a[k][k]))
                    if a[k][j] != 0:
                        swap_cols(k, j)
                        dirty = True
        # enforce the divisibility chain: fold any bad entry into column k
        bad = next(((i, j) for i in range(k + 1, rows) for j in range(k + 1, cols)
                    if a[i][j] % a[k][k] != 0), None)
        if bad is not None:
            add_row(bad[0], k, 1)
            continue
        if a[k][k] < 0:
            for c in range(cols):
                a[k][c] = -a[k][c]
            for c in range(rows):
                s[k][c] = -s[k][c]
        k += 1
    return s, a, t
