"""Run verification campaigns at several right-hand-side spreads.

Writes one CSV per spread and prints a pass/fail/skipped table per check.

    python scripts/run_campaign.py --count 200 --spreads 0 2 4 --out results/
"""
import argparse
import time
from pathlib import Path

from tardos_lp.harness import run_campaign, summarize, write_csv


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--count", type=int, default=200)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--max-nodes", type=int, default=6)
    ap.add_argument("--spreads", type=int, nargs="+", default=[0, 2, 4])
    ap.add_argument("--tu-max-order", type=int, default=None)
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--out", type=Path, default=Path("results"))
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)

    for spread in args.spreads:
        t0 = time.perf_counter()
        recs = run_campaign(args.count, args.seed, args.max_nodes, spread=spread,
                            tu_max_order=args.tu_max_order, jobs=args.jobs)
        elapsed = time.perf_counter() - t0
        path = args.out / f"campaign_seed{args.seed}_spread{spread}.csv"
        with open(path, "w", newline="") as fh:
            write_csv(recs, fh)
        iters = [r.outer_iterations for r in recs]
        print(f"spread {spread}: {len(recs)} runs in {elapsed:.1f}s -> {path}")
        print(f"  outer iterations: max {max(iters)}, mean {sum(iters) / len(iters):.2f}")
        for check, counts in summarize(recs).items():
            cells = "  ".join(f"{k}={v}" for k, v in counts.items() if v)
            print(f"  {check:<11} {cells}")
        for r in recs:
            for f in r.failures:
                print(f"  FAIL {r.name}: {f}")


if __name__ == "__main__":
    main()
