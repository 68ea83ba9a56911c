"""Command line entry point: ``tardos-lp {solve,gen,verify,verify-tu,oracle}``.

Exit codes: 0 optimal, 1 infeasible, 2 no optimal solution (unbounded),
10 and above for usage, IO and parse errors.
"""
from __future__ import annotations

import argparse
import logging
import os
import sys

from .harness import (
    ASSUMPTION_VIOLATED,
    FAIL,
    PASS,
    SKIPPED,
    append_csv,
    run_campaign,
    run_record,
    summarize,
    write_csv,
)
from .lp_model import (
    InvalidParameters,
    ParseError,
    SizeLimitExceeded,
    gen_interval_matrix_lp,
    gen_mincost_flow,
    is_totally_unimodular,
    parse_instance,
    serialize_instance,
)
from .numeric import format_rational
from .oracle import TooLarge, enumerate_solve
from .tardos import AlgorithmError, SolveStatus, solve

EXIT = {SolveStatus.OPTIMAL: 0, SolveStatus.INFEASIBLE: 1, SolveStatus.NO_OPTIMAL_SOLUTION: 2}
EXIT_USAGE, EXIT_IO, EXIT_PARSE, EXIT_SOLVER = 10, 11, 12, 13


def _vec(xs) -> str:
    return "(" + ", ".join(format_rational(x) for x in xs) + ")"


def _default_seed() -> int:
    return int(os.environ.get("TARDOS_SEED", "0"))


def _load(path):
    with open(path, encoding="utf-8") as fh:
        return parse_instance(fh.read())


def cmd_solve(args) -> int:
    P = _load(args.path)
    out = solve(P, warm_start=args.warm_start, trace=True)
    print(f"status = {out.status.value}")
    if out.status is SolveStatus.OPTIMAL:
        print(f"x = {_vec(out.solution)}")
        print(f"objective = {format_rational(out.objective)}")
        print(f"basis = {tuple(out.basis)}")
    if args.trace:
        for i, it in enumerate(out.trace, start=1):
            print(f"iteration {i}: k_bar={it.k_bar} m'={it.reduced.m} n'={it.reduced.n}")
            if it.zero_rhs:
                print("  b' = 0, reduced problem solved from x' = 0")
                continue
            print(f"  L={it.basis_l} warm_start={it.warm_started} k^2={format_rational(it.scale.k_squared)}")
            print(f"  rounded rhs={it.rounded_rhs}")
            if it.x_double_prime is not None:
                print(f"  x''={_vec(it.x_double_prime)} L''={it.basis_l_double_prime} J={it.j_set}")
            print(f"  pivots={it.simplex.stats.pivots} degenerate={it.degenerate_pivots_seen}")
    if args.stats:
        append_csv(args.stats, [run_record(P, with_oracle=False, warm_start=args.warm_start)])
    return EXIT[out.status]


def cmd_gen(args) -> int:
    seed = args.seed if args.seed is not None else _default_seed()
    if args.family == "flow":
        P = gen_mincost_flow(args.nodes, args.arcs, seed, cost_range=tuple(args.cost_range),
                             supply_range=tuple(args.rhs_range))
    else:
        P = gen_interval_matrix_lp(args.rows, args.cols, seed, cost_range=tuple(args.cost_range),
                                   rhs_range=tuple(args.rhs_range))
    text = serialize_instance(P)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_verify(args) -> int:
    seed = args.seed if args.seed is not None else _default_seed()
    records = run_campaign(args.count, seed, args.max_nodes, spread=args.spread,
                           tu_max_order=args.tu_max_order, jobs=args.jobs)
    if args.out:
        with open(args.out, "w", newline="") as fh:
            write_csv(records, fh)
    totals = summarize(records)
    for check, counts in totals.items():
        extra = f" {ASSUMPTION_VIOLATED}={counts[ASSUMPTION_VIOLATED]}" if ASSUMPTION_VIOLATED in counts else ""
        print(f"{check:12s} pass={counts[PASS]} fail={counts[FAIL]} skipped={counts[SKIPPED]}{extra}")
    bad = [r for r in records if r.failed]
    for r in bad:
        print(f"FAIL {r.name}: " + "; ".join(r.failures), file=sys.stderr)
    print(f"{len(records)} instances, {len(bad)} with failures")
    return 1 if bad else 0


def cmd_verify_tu(args) -> int:
    P = _load(args.path)
    rep = is_totally_unimodular(P.A, args.max_order)
    print(f"totally unimodular = {rep.is_tu} (orders up to {rep.max_order_checked} checked)")
    if not rep.is_tu:
        rows, cols = rep.witness
        print(f"witness rows={list(rows)} cols={list(cols)} det={format_rational(rep.witness_det)}")
    return 0 if rep.is_tu else 1


def cmd_oracle(args) -> int:
    P = _load(args.path)
    res = enumerate_solve(P)
    print(f"status = {res.status}")
    if res.status == "Optimal":
        print(f"x = {_vec(res.solution)}")
        print(f"objective = {format_rational(res.objective)}")
        print(f"unique = {res.unique}")
        for B in res.optimal_bases:
            print(f"optimal basis {B}")
    return {"Optimal": 0, "Infeasible": 1, "Unbounded": 2}[res.status]


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tardos-lp", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", help="solve an instance file")
    s.add_argument("path")
    s.add_argument("--warm-start", action=argparse.BooleanOptionalAction, default=True)
    s.add_argument("--trace", action="store_true", help="print the per-iteration trace")
    s.add_argument("--stats", metavar="CSV", help="append a run record to this CSV file")
    s.set_defaults(func=cmd_solve)

    g = sub.add_parser("gen", help="generate a totally unimodular instance")
    g.add_argument("family", choices=["flow", "interval"])
    g.add_argument("--nodes", type=int, default=4)
    g.add_argument("--arcs", type=int, default=6)
    g.add_argument("--rows", type=int, default=3)
    g.add_argument("--cols", type=int, default=5)
    g.add_argument("--cost-range", type=int, nargs=2, default=(-5, 5), metavar=("LO", "HI"))
    g.add_argument("--rhs-range", type=int, nargs=2, default=(-5, 5), metavar=("LO", "HI"))
    g.add_argument("--seed", type=int)
    g.add_argument("--out")
    g.set_defaults(func=cmd_gen)

    v = sub.add_parser("verify", help="oracle-backed verification campaign")
    v.add_argument("--count", type=int, default=200)
    v.add_argument("--seed", type=int)
    v.add_argument("--max-nodes", type=int, default=6)
    v.add_argument("--spread", type=int, default=0,
                   help="scale right-hand sides by up to 10**SPREAD to force more iterations")
    v.add_argument("--tu-max-order", type=int, default=None,
                   help="also certify A and every derived matrix up to this order")
    v.add_argument("--jobs", type=int, default=1)
    v.add_argument("--out", metavar="CSV")
    v.set_defaults(func=cmd_verify)

    t = sub.add_parser("verify-tu", help="brute-force total unimodularity check")
    t.add_argument("path")
    t.add_argument("--max-order", type=int)
    t.set_defaults(func=cmd_verify_tu)

    o = sub.add_parser("oracle", help="ground truth by basis enumeration")
    o.add_argument("path")
    o.set_defaults(func=cmd_oracle)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else 0
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"{getattr(args, 'path', '')}: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except OSError as exc:
        print(exc, file=sys.stderr)
        return EXIT_IO
    except (InvalidParameters, SizeLimitExceeded, TooLarge, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except AlgorithmError as exc:
        print(f"solver error: {exc}", file=sys.stderr)
        return EXIT_SOLVER


if __name__ == "__main__":
    sys.exit(main())
