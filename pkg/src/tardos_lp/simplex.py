"""Two-phase primal simplex over exact rationals.

Entering variable: Dantzig's rule (most negative reduced cost), ties to the
smallest column index.  Leaving variable: lexicographic ratio test, which
rules out cycling so the method terminates on degenerate problems too.
The tableau is rebuilt from the basis at every pivot; at desk scale this
is cheap and leaves no room for drift in the incremental updates.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import linalg
from .linalg import SingularMatrix
from .lp_model import LPInstance


class SimplexStatus(str, enum.Enum):
    OPTIMAL = "Optimal"
    UNBOUNDED = "Unbounded"
    INFEASIBLE = "Infeasible"


class InfeasibleStart(ValueError):
    pass


@dataclass
class SimplexStats:
    """Pivot counters plus the largest/smallest positive BFS entry seen."""

    pivots: int = 0
    distinct_bfs: int = 0
    degenerate_pivots: int = 0
    max_positive_entry: Fraction | None = None
    min_positive_entry: Fraction | None = None
    all_integral: bool = True

    def observe(self, x: Sequence[Fraction]) -> None:
        for v in x:
            if v.denominator != 1:
                self.all_integral = False
            if v > 0:
                if self.max_positive_entry is None or v > self.max_positive_entry:
                    self.max_positive_entry = v
                if self.min_positive_entry is None or v < self.min_positive_entry:
                    self.min_positive_entry = v

    def merged(self, other: "SimplexStats") -> "SimplexStats":
        out = SimplexStats(
            self.pivots + other.pivots,
            self.distinct_bfs + other.distinct_bfs,
            self.degenerate_pivots + other.degenerate_pivots,
            self.max_positive_entry,
            self.min_positive_entry,
            self.all_integral and other.all_integral,
        )
        if other.max_positive_entry is not None:
            out.observe([other.max_positive_entry, other.min_positive_entry])
        return out


@dataclass
class SimplexOutcome:
    status: SimplexStatus
    solution: list[Fraction] | None = None
    basis: list[int] | None = None
    ray: list[Fraction] | None = None
    stats: SimplexStats = field(default_factory=SimplexStats)
    # one entry per auxiliary problem solved (phase one, phase two)
    phases: list[SimplexStats] = field(default_factory=list)
    path: list[tuple[int, ...]] = field(default_factory=list)
    objective: Fraction | None = None


def _basic_solution(P: LPInstance, basis: Sequence[int]):
    B = linalg.columns(P.A, basis)
    Binv = linalg.inverse(B)
    xB = linalg.matvec(Binv, P.b)
    x = [Fraction(0)] * P.n
    for i, j in enumerate(basis):
        x[j] = xB[i]
    return Binv, xB, x


def reduced_costs(P: LPInstance, basis: Sequence[int], Binv=None) -> list[Fraction]:
    """``c_j - c_B^T B^-1 A_j`` for every column (zero on basic columns)."""
    if Binv is None:
        Binv = linalg.inverse(linalg.columns(P.A, basis))
    cB = [P.c[j] for j in basis]
    y = [linalg.dot(cB, [Binv[i][r] for i in range(len(basis))]) for r in range(P.m)]
    return [P.c[j] - linalg.dot(y, linalg.column(P.A, j)) for j in range(P.n)]


def _lex_less(u: Sequence[Fraction], v: Sequence[Fraction]) -> bool:
    for a, b in zip(u, v):
        if a != b:
            return a < b
    return False


def optimize(P: LPInstance, start: Sequence[int], max_pivots: int | None = None) -> SimplexOutcome:
    """Primal simplex from a feasible basis ``start``."""
    basis = list(start)
    if len(basis) != P.m or len(set(basis)) != P.m:
        raise InfeasibleStart(f"start must list {P.m} distinct columns")
    try:
        Binv, xB, x = _basic_solution(P, basis)
    except SingularMatrix:
        raise InfeasibleStart("start basis is singular") from None
    if any(v < 0 for v in xB):
        raise InfeasibleStart("start basis is not primal feasible")

    # lexicographic order is taken relative to the starting basis columns,
    # which makes every row of [B^-1 b | B^-1 A_start] lex-positive at the start
    start_cols = linalg.columns(P.A, basis)
    stats = SimplexStats(distinct_bfs=1)
    stats.observe(x)
    path = [tuple(basis)]

    while True:
        d = reduced_costs(P, basis, Binv)
        in_basis = set(basis)
        entering, best = None, Fraction(0)
        for j in range(P.n):
            if j not in in_basis and d[j] < best:
                entering, best = j, d[j]
        if entering is None:
            return SimplexOutcome(
                SimplexStatus.OPTIMAL, x, basis, stats=stats, phases=[stats], path=path, objective=P.objective(x)
            )

        u = linalg.matvec(Binv, linalg.column(P.A, entering))
        rows = [i for i in range(P.m) if u[i] > 0]
        if not rows:
            ray = [Fraction(0)] * P.n
            ray[entering] = Fraction(1)
            for i, j in enumerate(basis):
                ray[j] = -u[i]
            return SimplexOutcome(SimplexStatus.UNBOUNDED, x, basis, ray, stats, [stats], path)

        lex = linalg.matmul(Binv, start_cols)
        leave, key = None, None
        for i in rows:
            cand = [xB[i] / u[i]] + [v / u[i] for v in lex[i]]
            if key is None or _lex_less(cand, key):
                leave, key = i, cand

        basis[leave] = entering
        stats.pivots += 1
        if key[0] > 0:
            stats.distinct_bfs += 1
        else:
            stats.degenerate_pivots += 1
        Binv, xB, x = _basic_solution(P, basis)
        stats.observe(x)
        path.append(tuple(basis))
        if max_pivots is not None and stats.pivots > max_pivots:
            raise RuntimeError(f"simplex exceeded {max_pivots} pivots")


def phase_one(P: LPInstance) -> SimplexOutcome:
    """Find a feasible basis of ``P`` by minimising the sum of artificials.

    ``P`` must have full row rank; an artificial that cannot be driven out
    of the final basis signals a redundant row and raises RankDeficient.
    """
    m, n = P.m, P.n
    sign = [Fraction(-1) if bi < 0 else Fraction(1) for bi in P.b]
    A_aux = [[s * a for a in row] + [Fraction(int(i == k)) for k in range(m)] for i, (s, row) in enumerate(zip(sign, P.A))]
    aux = LPInstance(A_aux, [s * bi for s, bi in zip(sign, P.b)], [0] * n + [1] * m, P.name + "/phase1")
    res = optimize(aux, list(range(n, n + m)))
    stats = res.stats
    if res.objective > 0:
        return SimplexOutcome(SimplexStatus.INFEASIBLE, stats=stats, phases=[stats], path=res.path)

    basis = list(res.basis)
    path = list(res.path)
    for pos in range(m):
        if basis[pos] < n:
            continue
        Binv = linalg.inverse(linalg.columns(A_aux, basis))
        in_basis = set(basis)
        repl = next(
            (j for j in range(n) if j not in in_basis and linalg.dot(Binv[pos], linalg.column(A_aux, j)) != 0),
            None,
        )
        if repl is None:
            raise linalg.RankDeficient("redundant equation left an artificial in the basis")
        basis[pos] = repl
        stats.pivots += 1
        stats.degenerate_pivots += 1
        path.append(tuple(basis))

    x = res.solution[:n]
    return SimplexOutcome(SimplexStatus.OPTIMAL, x, basis, stats=stats, phases=[stats], path=path, objective=P.objective(x))


def solve_two_phase(P: LPInstance) -> SimplexOutcome:
    first = phase_one(P)
    if first.status is SimplexStatus.INFEASIBLE:
        return first
    second = optimize(P, first.basis)
    second.phases = [first.stats, second.stats]
    second.stats = first.stats.merged(second.stats)
    second.path = first.path + second.path
    return second
