"""Pivot and degeneracy statistics of the auxiliary simplex solves.

For each instance size bucket (m, n) reports total pivots, distinct BFS,
degenerate pivots, the observed gamma/delta and how far the distinct-BFS
count sits below the pivot bound.  Also compares warm and cold starts.

    python scripts/pivot_stats.py --count 300 --spread 4
"""
import argparse
from collections import defaultdict

from tardos_lp.harness import campaign_instance, run_record


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--count", type=int, default=300)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--max-nodes", type=int, default=6)
    ap.add_argument("--spread", type=int, default=4)
    args = ap.parse_args()

    buckets = defaultdict(list)
    warm_total = cold_total = 0
    for i in range(args.count):
        P = campaign_instance(i, args.seed, args.max_nodes, args.spread)
        warm = run_record(P, with_oracle=False)
        cold = run_record(P, with_oracle=False, warm_start=False)
        warm_total += warm.total_pivots
        cold_total += cold.total_pivots
        if warm.m:
            buckets[(warm.m, warm.n)].append(warm)

    print(f"{'m':>2} {'n':>3} {'runs':>5} {'pivots':>7} {'bfs':>5} {'degen':>6} {'gamma':>6} {'delta':>6} {'bfs/bound':>10}")
    for (m, n), recs in sorted(buckets.items()):
        gammas = [r.gamma_observed for r in recs if r.gamma_observed is not None]
        deltas = [r.delta_observed for r in recs if r.delta_observed is not None]
        ratio = max(r.distinct_bfs / r.km_bound_ln for r in recs)
        print(
            f"{m:>2} {n:>3} {len(recs):>5} {sum(r.total_pivots for r in recs):>7} "
            f"{sum(r.distinct_bfs for r in recs):>5} {sum(r.degenerate_pivots for r in recs):>6} "
            f"{str(max(gammas, default='-')):>6} {str(min(deltas, default='-')):>6} {ratio:>10.2e}"
        )
    print(f"total pivots: warm start {warm_total}, cold start {cold_total}")


if __name__ == "__main__":
    main()
