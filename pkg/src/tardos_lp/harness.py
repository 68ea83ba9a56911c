"""Verification campaign: run the solver next to the oracle and check every bound.

Each run produces a :class:`RunRecord` whose check columns are ternary
(``pass`` / ``fail`` / ``skipped``).  The pivot-count bound only holds for
non-degenerate auxiliary problems, so when it fails on a run that made
degenerate pivots it is reported as ``assumption violated`` instead.
"""
from __future__ import annotations

import csv
import io
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

import mpmath

from .lp_model import LPInstance, gen_flow_network, gen_interval_matrix_lp, is_totally_unimodular
from .numeric import format_rational
from .oracle import enumerate_solve, proximity_check
from .tardos import AlgorithmError, SolveOutcome, SolveStatus, solve

PASS, FAIL, SKIPPED = "pass", "fail", "skipped"
ASSUMPTION_VIOLATED = "assumption violated"

CSV_HEADER = [
    "name", "m", "n", "status", "outer_iterations", "auxiliary_problems", "total_pivots",
    "distinct_bfs", "degenerate_pivots", "gamma_observed", "gamma_star_bound", "delta_observed",
    "km_bound_log2", "km_bound_ln", "lemma1", "corollary1", "lemma3", "proximity",
]

# solver status -> oracle statuses it is consistent with; "no optimal
# solution" is also the right answer for an infeasible problem
STATUS_MATCH = {
    "Optimal": {"Optimal"},
    "Infeasible": {"Infeasible"},
    "NoOptimalSolution": {"Unbounded", "Infeasible"},
}


def gamma_star(m: int, n: int) -> int:
    return m * (m * n * (m + n * n) + 1)


def rounded_rhs_bound(m: int, n: int) -> int:
    return m * n * (m + n * n) + 1


def km_bound(m: int, n: int, base: str = "e") -> int:
    """``2mn * ceil(X log X)`` with ``X = m^4 n + m^3 n^3 + m^2``."""
    X = m**4 * n + m**3 * n**3 + m**2
    if X <= 1:
        return 0
    with mpmath.workdps(60):
        lg = mpmath.log(X, 2) if base == "2" else mpmath.log(X)
        return 2 * m * n * int(mpmath.ceil(X * lg))


def _combine(results: Iterable[str]) -> str:
    results = list(results)
    if not results:
        return SKIPPED
    return FAIL if FAIL in results else PASS


@dataclass
class RunRecord:
    name: str
    m: int
    n: int
    status: str
    outer_iterations: int = 0
    auxiliary_problems: int = 0
    total_pivots: int = 0
    distinct_bfs: int = 0
    degenerate_pivots: int = 0
    gamma_observed: Fraction | None = None
    gamma_star_bound: int = 0
    delta_observed: Fraction | None = None
    km_bound_log2: int = 0
    km_bound_ln: int = 0
    lemma1: str = SKIPPED
    corollary1: str = SKIPPED
    lemma3: str = SKIPPED
    proximity: str = SKIPPED
    # checks that have no CSV column
    oracle_status: str | None = None
    status_ok: str = SKIPPED
    solution_ok: str = SKIPPED
    integrality: str = SKIPPED
    accounting: str = SKIPPED
    tu: str = SKIPPED
    unique: bool | None = None
    failures: list[str] = field(default_factory=list)

    def csv_row(self) -> list[str]:
        def cell(v):
            if v is None:
                return ""
            if isinstance(v, Fraction):
                return format_rational(v)
            return str(v)

        return [cell(getattr(self, h)) for h in CSV_HEADER]

    def checks(self) -> dict[str, str]:
        return {
            "status": self.status_ok,
            "solution": self.solution_ok,
            "lemma1": self.lemma1,
            "corollary1": self.corollary1,
            "lemma3": self.lemma3,
            "integrality": self.integrality,
            "accounting": self.accounting,
            "proximity": self.proximity,
            "tu": self.tu,
        }

    @property
    def failed(self) -> bool:
        return FAIL in self.checks().values()


def write_csv(records: Iterable[RunRecord], fh, header: bool = True) -> None:
    w = csv.writer(fh, lineterminator="\n")
    if header:
        w.writerow(CSV_HEADER)
    for r in records:
        w.writerow(r.csv_row())


def read_csv(text: str) -> list[dict[str, str]]:
    return list(csv.DictReader(io.StringIO(text)))


def append_csv(path, records: Iterable[RunRecord]) -> None:
    try:
        with open(path) as fh:
            fresh = fh.read(1) == ""
    except FileNotFoundError:
        fresh = True
    with open(path, "a", newline="") as fh:
        write_csv(records, fh, header=fresh)


# --- per-run checks ----------------------------------------------------------


def _aux_stats(out: SolveOutcome):
    return [st for it in out.trace for st in it.phases]


def _check_lemma1(out: SolveOutcome, rec: RunRecord) -> str:
    res = []
    for it in out.trace:
        if it.x_double_prime is None:
            continue
        n_prime = it.reduced.n
        ok = max(it.x_double_prime) >= n_prime and bool(it.j_set)
        if not ok:
            rec.failures.append(f"lemma1: |x''|_inf={max(it.x_double_prime)} < n'={n_prime}")
        res.append(PASS if ok else FAIL)
    return _combine(res)


def _check_lemma3(out: SolveOutcome, rec: RunRecord) -> str:
    res = []
    for it in out.trace:
        if it.rounded is None:
            continue
        mp, np_ = it.reduced.m, it.reduced.n
        rhs_ok = max((abs(v) for v in it.rounded_rhs), default=0) <= rounded_rhs_bound(mp, np_)
        gammas = [st.max_positive_entry for st in it.phases if st.max_positive_entry is not None]
        gam_ok = all(g <= gamma_star(mp, np_) for g in gammas)
        if not (rhs_ok and gam_ok):
            rec.failures.append(f"lemma3: rhs={it.rounded_rhs} gammas={gammas} m'={mp} n'={np_}")
        res.append(PASS if rhs_ok and gam_ok else FAIL)
    return _combine(res)


def _check_integrality(out: SolveOutcome, rec: RunRecord) -> str:
    res = []
    for it in out.trace:
        if it.rounded is None:
            continue
        for st in it.phases:
            ok = st.all_integral and (st.min_positive_entry is None or st.min_positive_entry >= 1)
            if not ok:
                rec.failures.append(f"integrality: min positive {st.min_positive_entry}, integral={st.all_integral}")
            res.append(PASS if ok else FAIL)
    return _combine(res)


def _check_accounting(out: SolveOutcome, rec: RunRecord) -> str:
    m = rec.m
    if m == 0:
        return SKIPPED
    counts_ok = rec.outer_iterations <= m and rec.auxiliary_problems <= 2 * m
    if not counts_ok:
        rec.failures.append(f"accounting: {rec.outer_iterations} iterations, {rec.auxiliary_problems} auxiliary problems, m={m}")
        return FAIL
    if rec.distinct_bfs <= min(rec.km_bound_log2, rec.km_bound_ln):
        return PASS
    if rec.degenerate_pivots > 0:
        return ASSUMPTION_VIOLATED
    rec.failures.append(f"accounting: {rec.distinct_bfs} distinct BFS above the pivot bound")
    return FAIL


def _check_tu(P: LPInstance, out: SolveOutcome, rec: RunRecord, max_order: int) -> str:
    mats = [("A", P.A)]
    for i, it in enumerate(out.trace):
        mats.append((f"A' (iteration {i})", it.reduced.a_prime))
        if it.rounded is not None:
            mats.append((f"rounded matrix (iteration {i})", it.rounded.instance.A))
    res = []
    for label, M in mats:
        if not M or not M[0] or min(len(M), len(M[0])) > max_order:
            continue
        rep = is_totally_unimodular(M)
        if not rep.is_tu:
            rec.failures.append(f"tu: {label} has a subdeterminant {rep.witness_det}")
        res.append(PASS if rep.is_tu else FAIL)
    return _combine(res)


def _check_against_oracle(out: SolveOutcome, orc, rec: RunRecord) -> None:
    rec.oracle_status = orc.status
    rec.status_ok = PASS if orc.status in STATUS_MATCH[out.status.value] else FAIL
    if rec.status_ok == FAIL:
        rec.failures.append(f"status: solver {out.status.value}, oracle {orc.status}")
    if orc.status != "Optimal" or out.status is not SolveStatus.OPTIMAL:
        return
    rec.unique = orc.unique
    if orc.unique:
        ok = out.solution == orc.solution
    else:
        ok = out.objective == orc.objective and out.instance.is_feasible(out.solution)
    rec.solution_ok = PASS if ok else FAIL
    if not ok:
        rec.failures.append(f"solution: solver {out.solution}, oracle {orc.solution}")

    if not orc.unique:
        return
    x_star = orc.solution
    res = []
    for it in out.trace:
        for j in it.k_bar + it.j_set:
            ok = x_star[j] > 0
            if not ok:
                rec.failures.append(f"corollary1: index {j} fixed but x*_{j} = {x_star[j]}")
            res.append(PASS if ok else FAIL)
    rec.corollary1 = _combine(res)

    res = []
    for it in out.trace:
        if it.x_double_prime is None:
            continue
        red = enumerate_solve(it.reduced.instance())
        if red.status != "Optimal" or not red.unique:
            rec.failures.append(f"proximity: reduced problem is {red.status}, unique={red.unique}")
            res.append(FAIL)
            continue
        ok = proximity_check(it.x_double_prime, red.solution, it.scale.k_squared, it.reduced.n)
        if not ok:
            rec.failures.append(f"proximity: x''={it.x_double_prime}, x*'={red.solution}, k^2={it.scale.k_squared}")
        res.append(PASS if ok else FAIL)
    rec.proximity = _combine(res)


def run_record(P: LPInstance, *, with_oracle: bool = True, tu_max_order: int | None = None,
               warm_start: bool = True) -> RunRecord:
    """Solve ``P`` and fill every check that the available information allows."""
    try:
        out = solve(P, warm_start=warm_start, trace=True)
    except AlgorithmError as exc:
        rec = RunRecord(P.name, P.m, P.n, "Error", failures=[f"solver: {exc}"])
        rec.status_ok = FAIL
        return rec
    R = out.instance if out.instance is not None else P
    m, n = R.m, R.n
    stats = _aux_stats(out)
    pos_max = [s.max_positive_entry for s in stats if s.max_positive_entry is not None]
    pos_min = [s.min_positive_entry for s in stats if s.min_positive_entry is not None]
    rec = RunRecord(
        name=P.name,
        m=m,
        n=n,
        status=out.status.value,
        outer_iterations=len(out.trace),
        auxiliary_problems=len(stats),
        total_pivots=sum(s.pivots for s in stats),
        distinct_bfs=sum(s.distinct_bfs for s in stats),
        degenerate_pivots=sum(s.degenerate_pivots for s in stats),
        gamma_observed=max(pos_max, default=None),
        gamma_star_bound=gamma_star(m, n),
        delta_observed=min(pos_min, default=None),
        km_bound_log2=km_bound(m, n, "2"),
        km_bound_ln=km_bound(m, n, "e"),
    )
    rec.lemma1 = _check_lemma1(out, rec)
    rec.lemma3 = _check_lemma3(out, rec)
    rec.integrality = _check_integrality(out, rec)
    rec.accounting = _check_accounting(out, rec)
    if tu_max_order:
        rec.tu = _check_tu(R, out, rec, tu_max_order)
    if with_oracle:
        _check_against_oracle(out, enumerate_solve(P), rec)
    return rec


# --- campaigns ---------------------------------------------------------------

FAMILIES = ("flow", "flow-signed", "interval", "interval-signed")


def campaign_instance(index: int, seed: int, max_nodes: int = 6, spread: int = 0) -> LPInstance:
    """Deterministic instance ``index`` of the campaign with ``seed``.

    Families rotate between flows with nonnegative / signed costs and
    interval matrices with nonnegative / signed right-hand sides; all data
    lie in [-5, 5].  ``spread > 0`` multiplies each right-hand side entry by
    a random power of ten up to ``10**spread`` so that the rounded problems
    differ from the original and the solver needs several iterations.
    """
    rng = random.Random(seed * 1_000_003 + index)
    family = FAMILIES[index % len(FAMILIES)]
    if family.startswith("flow"):
        nodes = rng.randint(2, max(2, max_nodes))
        arcs = rng.randint(nodes - 1, min(2 * nodes, nodes * (nodes - 1)))
        costs = (0, 5) if family == "flow" else (-5, 5)
        net = gen_flow_network(nodes, arcs, rng.randrange(2**31), cost_range=costs)
        if spread:
            net.supplies[:-1] = [s * 10 ** rng.randint(0, spread) for s in net.supplies[:-1]]
            net.supplies[-1] = -sum(net.supplies[:-1])
        P = net.to_lp()
    else:
        m = rng.randint(1, 5)
        n = rng.randint(m, 8)
        rhs = (0, 5) if family == "interval" else (-5, 5)
        P = gen_interval_matrix_lp(m, n, rng.randrange(2**31), rhs_range=rhs)
        if spread:
            P.b = [bi * 10 ** rng.randint(0, spread) for bi in P.b]
    P.name = f"{family}-{seed}-{index}"
    return P


def _campaign_job(args) -> RunRecord:
    index, seed, max_nodes, spread, tu_max_order = args
    P = campaign_instance(index, seed, max_nodes, spread)
    return run_record(P, with_oracle=True, tu_max_order=tu_max_order)


def run_campaign(count: int, seed: int, max_nodes: int = 6, *, spread: int = 0,
                 tu_max_order: int | None = None, jobs: int = 1) -> list[RunRecord]:
    """Run ``count`` instances; records come back in instance order."""
    args = [(i, seed, max_nodes, spread, tu_max_order) for i in range(count)]
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as pool:
            return list(pool.map(_campaign_job, args, chunksize=4))
    return [_campaign_job(a) for a in args]


def summarize(records: list[RunRecord]) -> dict[str, dict[str, int]]:
    """``{check: {outcome: count}}`` over the whole campaign."""
    out: dict[str, dict[str, int]] = {}
    for rec in records:
        for name, result in rec.checks().items():
            bucket = out.setdefault(name, {PASS: 0, FAIL: 0, SKIPPED: 0})
            bucket[result] = bucket.get(result, 0) + 1
    return out
