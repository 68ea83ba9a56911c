"""Ground truth by exhaustive basis enumeration (small instances only)."""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import linalg
from .linalg import Inconsistent, SingularMatrix
from .lp_model import LPInstance
from .numeric import compare_affine_sqrt

GUARD = 10**6


class TooLarge(RuntimeError):
    pass


@dataclass
class Vertex:
    basis: tuple[int, ...]
    x: tuple[Fraction, ...]
    objective: Fraction


@dataclass
class OracleResult:
    status: str  # "Optimal" | "Infeasible" | "Unbounded"
    optimal_bases: list[tuple[int, ...]] = field(default_factory=list)
    unique: bool = False
    solution: list[Fraction] | None = None
    objective: Fraction | None = None
    vertices: list[Vertex] = field(default_factory=list)


def enumerate_solve(P: LPInstance, guard: int = GUARD) -> OracleResult:
    try:
        A, b = linalg.full_row_rank_reduce(P.A, P.b)
    except Inconsistent:
        return OracleResult("Infeasible")
    m, n = len(A), P.n
    if math.comb(n, m) > guard:
        raise TooLarge(f"C({n}, {m}) bases exceed the guard of {guard}")

    vertices = []
    unbounded = False
    for B in itertools.combinations(range(n), m):
        try:
            Binv = linalg.inverse(linalg.columns(A, B))
        except SingularMatrix:
            continue
        xB = linalg.matvec(Binv, b)
        if any(v < 0 for v in xB):
            continue
        x = [Fraction(0)] * n
        for i, j in zip(range(m), B):
            x[j] = xB[i]
        vertices.append(Vertex(B, tuple(x), P.objective(x)))
        if not unbounded:
            # descent direction along column j with no blocking row
            cB = [P.c[j] for j in B]
            for j in range(n):
                if j in B:
                    continue
                u = linalg.matvec(Binv, linalg.column(A, j))
                if all(v <= 0 for v in u) and P.c[j] - linalg.dot(cB, u) < 0:
                    unbounded = True
                    break

    if not vertices:
        return OracleResult("Infeasible")
    if unbounded:
        return OracleResult("Unbounded", vertices=vertices)
    best = min(v.objective for v in vertices)
    opt = [v for v in vertices if v.objective == best]
    points = {v.x for v in opt}
    return OracleResult(
        "Optimal",
        [v.basis for v in opt],
        len(points) == 1,
        list(opt[0].x),
        best,
        vertices,
    )


def proximity_check(x_dd: Sequence[Fraction], x_star_reduced: Sequence[Fraction], k_squared: Fraction, n_prime: int) -> bool:
    """Check ``|x''_i - x*_i / k| < n'`` for every coordinate, exactly.

    Multiplying through by ``k = sqrt(k_squared) > 0`` this is
    ``(x''_i - n') k < x*_i < (x''_i + n') k``.
    """
    if len(x_dd) != len(x_star_reduced):
        raise ValueError("dimension mismatch")
    for xd, xs in zip(x_dd, x_star_reduced):
        if compare_affine_sqrt(-xs, xd - n_prime, k_squared) >= 0:
            return False
        if compare_affine_sqrt(-xs, xd + n_prime, k_squared) <= 0:
            return False
    return True
