#!/usr/bin/env python3
"""Recovery versus sample size on a fixed random sparse graph.

For each sample size, runs several replicates of plain BIC learning and
adjSHD aggregation and prints mean correct / total skeleton edges.

Usage:
  python scripts/sample_size_study.py --p 20 --edges 22 --sizes 100,1000,10000
"""

import argparse

import numpy as np

from dagbag import (
    ScoreKind,
    SimConfig,
    aggregate,
    evaluate,
    generate_random_dag,
    hill_climb,
    learn_ensemble,
    simulate,
)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--p", type=int, default=20)
    ap.add_argument("--edges", type=int, default=22)
    ap.add_argument("--sizes", default="100,1000,10000")
    ap.add_argument("--reps", type=int, default=10)
    ap.add_argument("--boot", type=int, default=100)
    ap.add_argument("--snr", default="0.5:1.5")
    ap.add_argument("--jobs", type=int, default=2)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    truth = generate_random_dag(args.p, args.edges, args.seed)
    snr = tuple(float(x) for x in args.snr.split(":"))
    print(f"truth: p={args.p}, edges={truth.num_edges}")
    header = f"{'n':>7} {'plain corr/total':>18} {'adjshd corr/total':>19} {'adjshd fp':>10}"
    print(header)
    for n in (int(s) for s in args.sizes.split(",")):
        plain_c, plain_t, agg_c, agg_t = [], [], [], []
        for rep in range(args.reps):
            seed = args.seed * 1000 + rep
            data = simulate(
                SimConfig(graph=truth, n=n, snr_range=snr, seed=seed)
            ).data
            plain, _ = hill_climb(data, ScoreKind.BIC, eps=1e-6, max_steps=500, seed=seed)
            rep_plain = evaluate(plain, truth)
            plain_c.append(rep_plain.correct_e)
            plain_t.append(rep_plain.total_e)
            ens = learn_ensemble(
                data, args.boot, ScoreKind.BIC, eps=1e-6, max_steps=500,
                seed=seed, jobs=args.jobs,
            )
            rep_agg = evaluate(aggregate(ens, 1.0).graph, truth)
            agg_c.append(rep_agg.correct_e)
            agg_t.append(rep_agg.total_e)
        fp = np.mean(agg_t) - np.mean(agg_c)
        print(
            f"{n:>7} {np.mean(plain_c):8.1f}/{np.mean(plain_t):<8.1f} "
            f"{np.mean(agg_c):8.1f}/{np.mean(agg_t):<8.1f} {fp:>10.2f}"
        )


if __name__ == "__main__":
    main()
