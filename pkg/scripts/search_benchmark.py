#!/usr/bin/env python3
"""Hill-climb timing benchmark; regressions against the bounds gate merges.

Usage:
  python scripts/search_benchmark.py            # both standard rows
  python scripts/search_benchmark.py --p 2639 --n 250 --steps 10000
"""

import argparse
import time

from dagbag import ScoreKind, SimConfig, generate_random_dag, hill_climb, simulate

STANDARD_ROWS = (
    # p, n, steps, bound seconds
    (500, 250, 1000, 120.0),
    (1000, 250, 2000, 300.0),
)


def run_row(p, n, steps, bound=None, seed=7):
    truth = generate_random_dag(p, int(p * 1.05), seed)
    data = simulate(SimConfig(graph=truth, n=n, seed=seed + 4)).data
    start = time.perf_counter()
    graph, trace = hill_climb(data, ScoreKind.BIC, eps=0.0, max_steps=steps, seed=1)
    elapsed = time.perf_counter() - start
    rate = 1000.0 * elapsed / max(1, len(trace.steps))
    verdict = ""
    if bound is not None:
        verdict = "  OK" if elapsed < bound else f"  REGRESSION (bound {bound:.0f}s)"
    print(
        f"p={p:>5} n={n:>4}: {len(trace.steps):>5} steps in {elapsed:7.1f}s "
        f"({rate:5.2f} ms/step), {graph.num_edges} edges{verdict}"
    )
    return elapsed


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--p", type=int, default=None)
    ap.add_argument("--n", type=int, default=250)
    ap.add_argument("--steps", type=int, default=2000)
    args = ap.parse_args()
    if args.p is not None:
        run_row(args.p, args.n, args.steps)
        return
    for p, n, steps, bound in STANDARD_ROWS:
        run_row(p, n, steps, bound)


if __name__ == "__main__":
    main()
