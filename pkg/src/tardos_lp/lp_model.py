"""Standard-form LP instances, the text file format, TU checks and generators."""
from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction

from .linalg import Matrix, Vector, determinant, shape
from .numeric import format_rational, parse_rational


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None, col: int | None = None):
        self.line = line
        self.col = col
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {col}" if col is not None else "") + ": "
        super().__init__(where + message)


class DimensionMismatch(ParseError):
    pass


class InvalidParameters(ValueError):
    pass


class SizeLimitExceeded(RuntimeError):
    pass


@dataclass
class LPInstance:
    """``min c.x  s.t.  A x = b, x >= 0`` over exact rationals."""

    A: Matrix
    b: Vector
    c: Vector
    name: str = "lp"

    def __post_init__(self):
        self.A = [[Fraction(x) for x in row] for row in self.A]
        self.b = [Fraction(x) for x in self.b]
        self.c = [Fraction(x) for x in self.c]
        if len(self.b) != len(self.A):
            raise DimensionMismatch(f"b has {len(self.b)} entries, A has {len(self.A)} rows")
        n = len(self.c)
        for i, row in enumerate(self.A):
            if len(row) != n:
                raise DimensionMismatch(f"row {i} of A has {len(row)} entries, expected {n}")

    @property
    def m(self) -> int:
        return len(self.A)

    @property
    def n(self) -> int:
        return len(self.c)

    def objective(self, x) -> Fraction:
        return sum((ci * xi for ci, xi in zip(self.c, x)), Fraction(0))

    def is_feasible(self, x) -> bool:
        if len(x) != self.n or any(xi < 0 for xi in x):
            return False
        return all(
            sum((a * xi for a, xi in zip(row, x)), Fraction(0)) == bi
            for row, bi in zip(self.A, self.b)
        )


# --- text format ----------------------------------------------------------


def _tokens(text: str):
    """Yield (line_number, [(col, token), ...]) for non-empty lines."""
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        toks = []
        col = 0
        for part in body.split():
            col = body.index(part, col)
            toks.append((col + 1, part))
            col += len(part)
        if toks:
            yield lineno, toks


def _rationals(lineno: int, toks) -> Vector:
    out = []
    for col, tok in toks:
        try:
            out.append(parse_rational(tok))
        except ValueError as exc:
            raise ParseError(str(exc), lineno, col) from None
    return out


def parse_instance(text: str) -> LPInstance:
    name = "lp"
    for raw in text.splitlines():
        stripped = raw.strip()
        if stripped.startswith("#") and stripped[1:].strip().startswith("name:"):
            name = stripped[1:].strip()[len("name:"):].strip()
            break

    lines = list(_tokens(text))
    if not lines:
        raise ParseError("empty instance file")
    lineno, toks = lines[0]
    if len(toks) != 2:
        raise ParseError("header must be 'm n'", lineno)
    try:
        m, n = (int(t) for _, t in toks)
    except ValueError:
        raise ParseError("header must hold two integers", lineno) from None
    if m < 0 or n < 0:
        raise ParseError("negative dimension in header", lineno)

    def labelled(idx: int, label: str, count: int) -> Vector:
        if idx >= len(lines):
            raise ParseError(f"missing '{label}' line")
        ln, tk = lines[idx]
        if tk[0][1] != label:
            raise ParseError(f"expected '{label}'", ln, tk[0][0])
        vals = _rationals(ln, tk[1:])
        if len(vals) != count:
            raise DimensionMismatch(f"'{label}' needs {count} entries, got {len(vals)}", ln)
        return vals

    c = labelled(1, "c:", n)
    b = labelled(2, "b:", m)
    rows = lines[3:]
    if len(rows) != m:
        at = rows[m][0] if len(rows) > m else None
        raise DimensionMismatch(f"expected {m} rows of A, got {len(rows)}", at)
    A = []
    for ln, tk in rows:
        row = _rationals(ln, tk)
        if len(row) != n:
            raise DimensionMismatch(f"row of A needs {n} entries, got {len(row)}", ln)
        A.append(row)
    return LPInstance(A, b, c, name)


def serialize_instance(P: LPInstance) -> str:
    fmt = lambda xs: " ".join(format_rational(x) for x in xs)  # noqa: E731
    out = [f"# name: {P.name}", f"{P.m} {P.n}", f"c: {fmt(P.c)}".rstrip(), f"b: {fmt(P.b)}".rstrip()]
    out += [fmt(row) for row in P.A]
    return "\n".join(out) + "\n"


# --- total unimodularity ----------------------------------------------------


@dataclass
class TUReport:
    is_tu: bool
    witness: tuple[tuple[int, ...], tuple[int, ...]] | None = None
    witness_det: Fraction | None = None
    max_order_checked: int = 0


def is_totally_unimodular(A: Matrix, max_order: int | None = None, budget: int = 10**7) -> TUReport:
    """Brute force: every square submatrix up to ``max_order`` has det in {-1, 0, 1}."""
    m, n = shape(A)
    top = min(m, n)
    if max_order is None:
        max_order = top
    if max_order > top:
        raise ValueError(f"max_order {max_order} exceeds min(m, n) = {top}")
    total = sum(math.comb(m, k) * math.comb(n, k) for k in range(1, max_order + 1))
    if total > budget:
        raise SizeLimitExceeded(f"{total} determinants exceed the budget of {budget}")
    for k in range(1, max_order + 1):
        for rows in itertools.combinations(range(m), k):
            sub_rows = [A[i] for i in rows]
            for cols in itertools.combinations(range(n), k):
                d = determinant([[r[j] for j in cols] for r in sub_rows])
                if d not in (-1, 0, 1):
                    return TUReport(False, (rows, cols), d, k)
    return TUReport(True, None, None, max_order)


# --- generators ------------------------------------------------------------


@dataclass
class FlowNetwork:
    nodes: int
    arcs: list[tuple[int, int]]
    supplies: list[int]
    costs: list[int]
    seed: int | None = None

    def incidence(self) -> list[list[int]]:
        """Node-arc incidence: +1 at the tail, -1 at the head."""
        M = [[0] * len(self.arcs) for _ in range(self.nodes)]
        for a, (u, v) in enumerate(self.arcs):
            M[u][a] = 1
            M[v][a] = -1
        return M

    def to_lp(self, name: str | None = None) -> LPInstance:
        # incidence rows sum to zero, so the last one is redundant
        A = self.incidence()[:-1]
        return LPInstance(A, self.supplies[:-1], self.costs, name or f"flow-n{self.nodes}-a{len(self.arcs)}-s{self.seed}")


def gen_flow_network(nodes, arcs, seed, cost_range=(-5, 5), supply_range=(-5, 5)) -> FlowNetwork:
    if nodes < 2:
        raise InvalidParameters("need at least 2 nodes")
    if arcs < nodes - 1:
        raise InvalidParameters(f"{arcs} arcs cannot connect {nodes} nodes")
    if arcs > nodes * (nodes - 1):
        raise InvalidParameters(f"at most {nodes * (nodes - 1)} distinct arcs on {nodes} nodes")
    rng = random.Random(seed)
    arc_list = []
    # spanning tree, oriented parent -> child
    for v in range(1, nodes):
        arc_list.append((rng.randrange(v), v))
    present = set(arc_list)
    candidates = [(u, v) for u in range(nodes) for v in range(nodes) if u != v and (u, v) not in present]
    arc_list += rng.sample(candidates, arcs - len(arc_list))
    supplies = [rng.randint(*supply_range) for _ in range(nodes - 1)]
    supplies.append(-sum(supplies))
    costs = [rng.randint(*cost_range) for _ in range(arcs)]
    return FlowNetwork(nodes, arc_list, supplies, costs, seed)


def gen_mincost_flow(nodes, arcs, seed, cost_range=(-5, 5), supply_range=(-5, 5)) -> LPInstance:
    return gen_flow_network(nodes, arcs, seed, cost_range, supply_range).to_lp()


def gen_interval_matrix_lp(m, n, seed, cost_range=(-5, 5), rhs_range=(-5, 5)) -> LPInstance:
    """Rows of A are 0/1 with consecutive ones (an interval matrix)."""
    if m < 1 or n < 1:
        raise InvalidParameters("m and n must be positive")
    rng = random.Random(seed)
    A = []
    for _ in range(m):
        lo = rng.randrange(n)
        hi = rng.randrange(lo, n)
        A.append([int(lo <= j <= hi) for j in range(n)])
    b = [rng.randint(*rhs_range) for _ in range(m)]
    c = [rng.randint(*cost_range) for _ in range(n)]
    return LPInstance(A, b, c, f"interval-m{m}-n{n}-s{seed}")
