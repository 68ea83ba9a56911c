"""Dense exact linear algebra over Fractions.

Matrices are lists of rows (``list[list[Fraction]]``), vectors are lists.
Every routine returns fresh objects and never mutates its inputs.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Matrix = list[list[Fraction]]
Vector = list[Fraction]


class LinAlgError(Exception):
    pass


class SingularMatrix(LinAlgError):
    pass


class DependentFixedColumns(LinAlgError):
    pass


class RankDeficient(LinAlgError):
    pass


class Inconsistent(LinAlgError):
    """Ax = b has no solution at all (``0 = nonzero`` after elimination)."""


def to_matrix(rows) -> Matrix:
    return [[Fraction(x) for x in row] for row in rows]


def to_vector(xs) -> Vector:
    return [Fraction(x) for x in xs]


def shape(M: Sequence[Sequence]) -> tuple[int, int]:
    return len(M), (len(M[0]) if M else 0)


def identity(n: int) -> Matrix:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def transpose(M: Matrix, ncols: int | None = None) -> Matrix:
    if not M:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*M)]


def matmul(A: Matrix, B: Matrix) -> Matrix:
    ncols = len(B[0]) if B else 0
    return [
        [sum((row[k] * B[k][j] for k in range(len(row))), Fraction(0)) for j in range(ncols)]
        for row in A
    ]


def matvec(A: Matrix, x: Sequence[Fraction]) -> Vector:
    return [sum((a * xi for a, xi in zip(row, x)), Fraction(0)) for row in A]


def dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def columns(A: Matrix, idx: Sequence[int]) -> Matrix:
    return [[row[j] for j in idx] for row in A]


def column(A: Matrix, j: int) -> Vector:
    return [row[j] for row in A]


def _eliminate(M: Matrix, rhs_cols: Matrix) -> Matrix:
    """Gauss-Jordan on ``[M | rhs_cols]``; returns the solved right block."""
    n = len(M)
    aug = [list(M[i]) + list(rhs_cols[i]) for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            raise SingularMatrix(f"no nonzero pivot in column {col}")
        aug[col], aug[piv] = aug[piv], aug[col]
        prow = aug[col]
        p = prow[col]
        if p != 1:
            prow = aug[col] = [x / p for x in prow]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], prow)]
    return [row[n:] for row in aug]


def solve_square(M: Matrix, rhs: Sequence) -> Vector:
    n = len(M)
    if any(len(row) != n for row in M) or len(rhs) != n:
        raise ValueError("solve_square needs a square system with matching rhs")
    out = _eliminate(M, [[Fraction(v)] for v in rhs])
    return [row[0] for row in out]


def inverse(M: Matrix) -> Matrix:
    n = len(M)
    if any(len(row) != n for row in M):
        raise ValueError("inverse of a non-square matrix")
    return _eliminate(M, identity(n))


def determinant(M: Matrix) -> Fraction:
    n = len(M)
    a = [list(map(Fraction, row)) for row in M]
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        p = a[col][col]
        det *= p
        for r in range(col + 1, n):
            if a[r][col] != 0:
                f = a[r][col] / p
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return det


class _IndependenceTracker:
    """Keeps an echelon basis so each new vector is tested in O(r * n)."""

    def __init__(self) -> None:
        self.rows: list[Vector] = []
        self.pivots: list[int] = []

    def reduce(self, v: Sequence[Fraction]) -> Vector:
        v = list(v)
        for row, p in zip(self.rows, self.pivots):
            if v[p] != 0:
                f = v[p] / row[p]
                v = [x - f * y for x, y in zip(v, row)]
        return v

    def add(self, v: Sequence[Fraction]) -> bool:
        """Add ``v`` if independent of what is stored; report whether it was."""
        r = self.reduce(v)
        p = next((i for i, x in enumerate(r) if x != 0), None)
        if p is None:
            return False
        self.rows.append(r)
        self.pivots.append(p)
        return True


def rank(A: Matrix) -> int:
    tracker = _IndependenceTracker()
    return sum(tracker.add(row) for row in A)


def min_norm_point(A: Matrix, g: Sequence) -> Vector:
    """Minimum Euclidean norm solution of ``A x = g`` for full-row-rank ``A``."""
    m, n = shape(A)
    if len(g) != m:
        raise ValueError("dimension mismatch")
    if m == 0:
        return [Fraction(0)] * n
    gram = matmul(A, transpose(A))
    y = solve_square(gram, g)
    return [sum((A[i][j] * y[i] for i in range(m)), Fraction(0)) for j in range(n)]


def extend_to_basis(A: Matrix, fixed: Sequence[int] = ()) -> list[int]:
    """Column indices of a nonsingular square submatrix, ``fixed`` first.

    The remaining slots are filled greedily with the smallest-index columns
    that increase the rank.
    """
    m, n = shape(A)
    tracker = _IndependenceTracker()
    chosen = []
    for j in fixed:
        if not tracker.add(column(A, j)):
            raise DependentFixedColumns(f"column {j} depends on {chosen}")
        chosen.append(j)
    fixed_set = set(fixed)
    for j in range(n):
        if len(chosen) == m:
            break
        if j not in fixed_set and tracker.add(column(A, j)):
            chosen.append(j)
    if len(chosen) < m:
        raise RankDeficient(f"rank {len(chosen)} < {m} rows")
    return chosen


def full_row_rank_reduce(A: Matrix, b: Sequence) -> tuple[Matrix, Vector]:
    """Drop redundant equations of ``Ax = b``; raise Inconsistent if unsolvable."""
    m, n = shape(A)
    tracker = _IndependenceTracker()
    keep = []
    for i in range(m):
        if tracker.add(list(A[i]) + [Fraction(b[i])]):
            keep.append(i)
    # an augmented row independent of the kept ones while its A-part is
    # dependent means 0 = nonzero
    if rank([A[i] for i in keep]) < len(keep):
        raise Inconsistent("equations contradict each other")
    return [list(A[i]) for i in keep], [Fraction(b[i]) for i in keep]
