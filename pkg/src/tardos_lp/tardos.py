"""Primal-simplex based Tardos algorithm for ``min c.x, Ax = b, x >= 0``.

Each outer iteration eliminates the variables already known to be positive
at optimality (``k_bar``), scales the remaining right-hand side so that the
minimum-norm solution has length ``m' + n'^2``, rounds it up, solves the
rounded problem with the two-phase simplex method and fixes every
coordinate that came out at least ``n'``.  For a totally unimodular ``A``
with a unique optimum this terminates after at most ``m`` iterations.
"""
from __future__ import annotations

import enum
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import linalg
from .linalg import Inconsistent, Matrix, SingularMatrix, Vector
from .lp_model import LPInstance
from .numeric import ceil_div_by_sqrt
from .simplex import SimplexOutcome, SimplexStats, SimplexStatus, optimize, solve_two_phase

log = logging.getLogger(__name__)


class SolveStatus(str, enum.Enum):
    OPTIMAL = "Optimal"
    INFEASIBLE = "Infeasible"
    NO_OPTIMAL_SOLUTION = "NoOptimalSolution"


class AlgorithmError(RuntimeError):
    """An outcome the theory rules out; indicates a bug or a violated assumption."""


class EmptyJ(AlgorithmError):
    pass


@dataclass
class AlgState:
    k_bar: list[int]
    k_set: list[int]
    iteration: int = 0


@dataclass
class ReducedProblem:
    a_prime: Matrix
    b_prime: Vector
    c_prime: Vector
    h1: Matrix
    h1_a_k: Matrix
    col_map: list[int]  # reduced column -> original index

    @property
    def m(self) -> int:
        return len(self.a_prime)

    @property
    def n(self) -> int:
        return len(self.col_map)

    def instance(self, name: str = "reduced") -> LPInstance:
        return LPInstance(self.a_prime, self.b_prime, self.c_prime, name)


@dataclass(frozen=True)
class ScaleFactor:
    k_squared: Fraction

    def __post_init__(self):
        if self.k_squared <= 0:
            raise ValueError("scale factor must be positive")


@dataclass
class RoundedProblem:
    instance: LPInstance
    col_map: list[int]  # rounded column -> reduced column (basis L first)
    scaled_rhs: Vector  # (A'_L)^-1 b', before division by k
    rhs: list[int]


@dataclass
class IterationReport:
    k_bar: list[int]
    reduced: ReducedProblem
    basis_l: list[int] | None = None  # original indices
    warm_started: bool = False
    zero_rhs: bool = False
    scale: ScaleFactor | None = None
    rounded: RoundedProblem | None = None
    rounded_rhs: list[int] | None = None
    # x'' indexed like the reduced problem's columns
    x_double_prime: Vector | None = None
    basis_l_double_prime: list[int] | None = None  # original indices
    j_set: list[int] = field(default_factory=list)
    simplex: SimplexOutcome | None = None
    degenerate_pivots_seen: int = 0

    @property
    def phases(self) -> list[SimplexStats]:
        return self.simplex.phases if self.simplex else []


@dataclass
class SolveOutcome:
    status: SolveStatus
    solution: Vector | None = None
    basis: list[int] | None = None
    trace: list[IterationReport] = field(default_factory=list)
    instance: LPInstance | None = None  # the rank-reduced problem actually solved
    objective: Fraction | None = None

    @property
    def auxiliary_problems(self) -> int:
        return sum(len(it.phases) for it in self.trace)


def reduce_problem(P: LPInstance, k_bar: Sequence[int]) -> ReducedProblem:
    """Eliminate ``x_{k_bar}`` through ``G^-1`` where ``G``'s first columns are ``A_{k_bar}``."""
    k_bar = list(k_bar)
    fixed = set(k_bar)
    K = [j for j in range(P.n) if j not in fixed]
    if not k_bar:
        return ReducedProblem([list(r) for r in P.A], list(P.b), list(P.c), [], [], K)
    G_cols = linalg.extend_to_basis(P.A, k_bar)
    H = linalg.inverse(linalg.columns(P.A, G_cols))
    t = len(k_bar)
    H1, H2 = H[:t], H[t:]
    A_K = linalg.columns(P.A, K)
    h1_a_k = linalg.matmul(H1, A_K)
    a_prime = linalg.matmul(H2, A_K)
    b_prime = linalg.matvec(H2, P.b)
    c_kbar = [P.c[j] for j in k_bar]
    c_prime = [P.c[j] - linalg.dot([h1_a_k[i][col] for i in range(t)], c_kbar) for col, j in enumerate(K)]
    return ReducedProblem(a_prime, b_prime, c_prime, H1, h1_a_k, K)


def lift(P: LPInstance, R: ReducedProblem, k_bar: Sequence[int], x_reduced: Sequence[Fraction]) -> Vector:
    """Recover the full vector: ``x_K = x'``, ``x_{k_bar} = H1 b - H1 A_K x'``."""
    x = [Fraction(0)] * P.n
    for col, j in enumerate(R.col_map):
        x[j] = Fraction(x_reduced[col])
    if k_bar:
        fixed_vals = [
            hb - h
            for hb, h in zip(linalg.matvec(R.h1, P.b), linalg.matvec(R.h1_a_k, x_reduced))
        ]
        for j, v in zip(k_bar, fixed_vals):
            x[j] = v
    return x


def compute_scaling_factor(R: ReducedProblem) -> ScaleFactor | None:
    """``k^2 = |y|^2 / (m' + n'^2)^2`` with ``y`` the min-norm solution; None if ``y = 0``."""
    y = linalg.min_norm_point(R.a_prime, R.b_prime)
    norm2 = linalg.dot(y, y)
    if norm2 == 0:
        return None
    return ScaleFactor(norm2 / (R.m + R.n**2) ** 2)


def build_rounded_problem(R: ReducedProblem, L: Sequence[int], k: ScaleFactor) -> RoundedProblem:
    """``x_L + A_L^-1 A_Lbar x_Lbar = ceil(A_L^-1 b' / k)`` with columns ordered L, Lbar."""
    L = list(L)
    in_l = set(L)
    Lbar = [j for j in range(R.n) if j not in in_l]
    ALinv = linalg.inverse(linalg.columns(R.a_prime, L))
    v = linalg.matvec(ALinv, R.b_prime)
    rhs = [ceil_div_by_sqrt(vi, k.k_squared) for vi in v]
    E_bar = linalg.matmul(ALinv, linalg.columns(R.a_prime, Lbar))
    A = [[Fraction(int(i == r)) for r in range(len(L))] + E_bar[i] for i in range(len(L))]
    order = L + Lbar
    c = [R.c_prime[j] for j in order]
    return RoundedProblem(LPInstance(A, rhs, c, "rounded"), order, v, rhs)


def select_large_indices(x: Sequence[Fraction], col_map: Sequence[int], n_prime: int) -> list[int]:
    """Original indices whose coordinate of ``x`` is at least ``n'``."""
    J = [col_map[i] for i, v in enumerate(x) if v >= n_prime]
    if not J:
        raise EmptyJ(f"no coordinate of x'' reaches n'={n_prime}: max is {max(x, default=None)}")
    return J


@dataclass
class OptimalityCheck:
    optimal: bool
    x: Vector | None = None
    dual: Vector | None = None


def check_optimal_basis(P: LPInstance, B: Sequence[int]) -> OptimalityCheck:
    B = list(B)
    if len(B) != P.m or len(set(B)) != P.m:
        return OptimalityCheck(False)
    try:
        Binv = linalg.inverse(linalg.columns(P.A, B))
    except SingularMatrix:
        return OptimalityCheck(False)
    xB = linalg.matvec(Binv, P.b)
    if any(v < 0 for v in xB):
        return OptimalityCheck(False)
    cB = [P.c[j] for j in B]
    y = [linalg.dot(cB, [Binv[i][r] for i in range(P.m)]) for r in range(P.m)]
    if any(P.c[j] - linalg.dot(y, linalg.column(P.A, j)) < 0 for j in range(P.n)):
        return OptimalityCheck(False)
    x = [Fraction(0)] * P.n
    for i, j in enumerate(B):
        x[j] = xB[i]
    return OptimalityCheck(True, x, y)


def _greedy_basis(R: ReducedProblem) -> list[int]:
    return linalg.extend_to_basis(R.a_prime, [])


def _warm_basis(R: ReducedProblem, carried: Sequence[int]) -> list[int] | None:
    pos = {j: i for i, j in enumerate(R.col_map)}
    if any(j not in pos for j in carried):
        return None
    L = [pos[j] for j in carried]
    if len(L) != R.m:
        return None
    try:
        linalg.inverse(linalg.columns(R.a_prime, L))
    except SingularMatrix:
        return None
    return L


def solve(P: LPInstance, warm_start: bool = True, trace: bool = True) -> SolveOutcome:
    """Run the algorithm on ``P`` (redundant equations are removed first).

    ``trace=False`` drops the per-iteration reports from the outcome.
    """
    try:
        A, b = linalg.full_row_rank_reduce(P.A, P.b)
    except Inconsistent:
        return SolveOutcome(SolveStatus.INFEASIBLE)
    P = LPInstance(A, b, P.c, P.name)
    m, n = P.m, P.n
    state = AlgState([], list(range(n)))
    reports: list[IterationReport] = []
    carried: list[int] | None = None

    def finish(status, x=None, basis=None):
        out = SolveOutcome(status, x, basis, reports if trace else [], P)
        if x is not None:
            out.objective = P.objective(x)
        return out

    while True:
        if len(state.k_bar) > m or state.iteration >= max(m, 1):
            raise AlgorithmError(f"|k_bar|={len(state.k_bar)} after {state.iteration} iterations with m={m}")
        R = reduce_problem(P, state.k_bar)
        rep = IterationReport(list(state.k_bar), R)
        reports.append(rep)
        state.iteration += 1

        k = compute_scaling_factor(R)
        if k is None:
            # b' = 0: x' = 0 is a BFS of the reduced problem under any basis
            rep.zero_rhs = True
            L = _greedy_basis(R)
            rep.basis_l = [R.col_map[i] for i in L]
            res = optimize(R.instance(), L)
            rep.simplex = res
            rep.degenerate_pivots_seen = res.stats.degenerate_pivots
            if res.status is SimplexStatus.UNBOUNDED:
                return finish(SolveStatus.NO_OPTIMAL_SOLUTION)
            x = lift(P, R, state.k_bar, res.solution)
            basis = state.k_bar + [R.col_map[i] for i in res.basis]
            if not check_optimal_basis(P, basis).optimal:
                raise AlgorithmError(f"reduced optimum at x'=0 does not lift to an optimum (k_bar={state.k_bar})")
            return finish(SolveStatus.OPTIMAL, x, basis)

        L = _warm_basis(R, carried) if (warm_start and carried is not None) else None
        rep.warm_started = L is not None
        if L is None:
            L = _greedy_basis(R)
        rep.basis_l = [R.col_map[i] for i in L]
        rep.scale = k
        rounded = build_rounded_problem(R, L, k)
        rep.rounded = rounded
        rep.rounded_rhs = rounded.rhs
        res = solve_two_phase(rounded.instance)
        rep.simplex = res
        rep.degenerate_pivots_seen = res.stats.degenerate_pivots
        if res.status is SimplexStatus.INFEASIBLE:
            return finish(SolveStatus.INFEASIBLE)
        if res.status is SimplexStatus.UNBOUNDED:
            return finish(SolveStatus.NO_OPTIMAL_SOLUTION)

        to_orig = [R.col_map[j] for j in rounded.col_map]
        x_red = [Fraction(0)] * R.n
        for i, j in enumerate(rounded.col_map):
            x_red[j] = res.solution[i]
        rep.x_double_prime = x_red
        l2 = [to_orig[i] for i in res.basis]
        rep.basis_l_double_prime = l2
        J = select_large_indices(res.solution, to_orig, R.n)
        rep.j_set = J

        cert = check_optimal_basis(P, state.k_bar + l2)
        if cert.optimal:
            return finish(SolveStatus.OPTIMAL, cert.x, state.k_bar + l2)

        state.k_bar = state.k_bar + J
        fixed = set(state.k_bar)
        state.k_set = [j for j in range(n) if j not in fixed]
        carried = [j for j in l2 if j not in set(J)]
        log.debug("iteration %d: J=%s k_bar=%s", state.iteration, J, state.k_bar)
        if len(state.k_set) == n - m:
            return finish(SolveStatus.INFEASIBLE)
