"""Command-line front end: simulate -> learn/bag -> aggregate -> evaluate -> curve.

Every subcommand writes its outputs under ``--out`` with fixed file names and
drops a ``run_manifest.txt`` whose recorded argv suffices to re-run the
command bit-identically (primary outputs; the manifest itself carries the
wall-clock duration and so differs between runs).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from . import __version__
from .aggregate import aggregate, write_aggregate, read_aggregate_edges
from .bootstrap import Ensemble, learn_ensemble, read_ensemble, write_ensemble
from .data import load_table, write_table
from .errors import DagbagError
from .evaluate import evaluate, format_report, learning_curve, write_curve, write_report
from .graph import default_labels, read_edgelist, write_edgelist
from .scores import ScoreKind
from .search import Constraints, hill_climb, random_restart, write_trace, read_trace_operations
from .simulate import Noise, SimConfig, generate_random_dag, simulate, write_sim_record

SEED_ENV = "DAGBAG_SEED"

DATA_FILE = "data.csv"
TRUTH_FILE = "truth.tsv"
SIM_RECORD_FILE = "simulation.txt"
LEARNED_FILE = "learned.tsv"
TRACE_FILE = "trace.tsv"
ENSEMBLE_DIR = "ensemble"
AGG_FILE = "aggregated.tsv"
CYCLIC_FILE = "cyclic.tsv"
REPORT_FILE = "report.tsv"
CURVE_FILE = "curve.tsv"
TABLE_FILE = "replicate_table.tsv"
MANIFEST_FILE = "run_manifest.txt"


def _parse_range(text: str) -> tuple:
    try:
        lo, hi = text.split(":")
        return float(lo), float(hi)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected LOW:HIGH, got {text!r}") from None


def _parse_alphas(text: str) -> tuple:
    try:
        return tuple(float(a) for a in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated reals, got {text!r}") from None


def _resolve_seed(args) -> int:
    if args.seed is not None:
        return args.seed
    return int(os.environ.get(SEED_ENV, "0"))


def _load_constraints(args, label_index) -> Constraints:
    def read_list(path):
        if path is None:
            return frozenset()
        g, labels = read_edgelist(path)
        if label_index is not None:
            remap = [label_index.get(lab) for lab in labels]
            if any(i is None for i in remap):
                missing = [lab for lab, i in zip(labels, remap) if i is None]
                raise DagbagError(f"{path}: labels not in data: {missing}")
            return frozenset((remap[s], remap[t]) for s, t in g.edges)
        return frozenset(g.edges)

    return Constraints(read_list(args.blacklist), read_list(args.whitelist))


def _label_index(labels):
    return {lab: i for i, lab in enumerate(labels)} if labels else None


def _write_manifest(out: Path, args, argv, seed: int, outputs, started, duration):
    flags = {
        key: (list(val) if isinstance(val, tuple) else val)
        for key, val in sorted(vars(args).items())
        if key != "command"
    }
    with open(out / MANIFEST_FILE, "w", encoding="utf-8") as fh:
        fh.write(f"tool=dagbag\nversion={__version__}\n")
        fh.write(f"command={args.command}\n")
        fh.write(f"argv={json.dumps(list(argv))}\n")
        fh.write(f"flags={json.dumps(flags)}\n")
        fh.write(f"seed={seed}\n")
        fh.write(f"started={started}\n")
        fh.write(f"duration_s={duration:.3f}\n")
        fh.write(f"outputs={','.join(outputs)}\n")


def read_manifest_argv(path) -> list:
    """Recover the argv a run_manifest.txt records."""
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            if line.startswith("argv="):
                return json.loads(line[len("argv="):])
    raise DagbagError(f"{path}: no argv line")


# -- subcommands ---------------------------------------------------------------


def _cmd_simulate(args, out: Path, seed: int):
    if args.graph is not None:
        truth, labels = read_edgelist(args.graph)
    else:
        if args.p is None or args.edges is None:
            raise DagbagError("either --graph or both --p and --edges are required")
        truth = generate_random_dag(args.p, args.edges, seed)
        labels = default_labels(args.p)
    config = SimConfig(
        graph=truth,
        n=args.n,
        coef_range=args.coef,
        snr_range=args.snr,
        noise=Noise.parse(args.noise),
        seed=seed,
    )
    result = simulate(config)
    write_table(out / DATA_FILE, result.data.values, labels)
    write_edgelist(out / TRUTH_FILE, truth, labels)
    write_sim_record(out / SIM_RECORD_FILE, result, labels)
    return [DATA_FILE, TRUTH_FILE, SIM_RECORD_FILE]


def _cmd_learn(args, out: Path, seed: int):
    data = load_table(args.data)
    labels = list(data.labels) if data.labels else default_labels(data.p)
    constraints = _load_constraints(args, _label_index(labels))
    truth = None
    if args.truth is not None:
        truth, _ = read_edgelist(args.truth)
    graph, trace = hill_climb(
        data,
        ScoreKind(args.score),
        eps=args.eps,
        max_steps=args.max_steps,
        constraints=constraints,
        seed=seed,
        truth=truth,
    )
    if args.restarts:
        graph, trace = random_restart(
            data,
            ScoreKind(args.score),
            (graph, trace.final_score),
            args.restarts,
            args.perturb,
            seed,
            eps=args.eps,
            max_steps=args.max_steps,
            constraints=constraints,
            truth=truth,
        )
    write_edgelist(out / LEARNED_FILE, graph, labels)
    write_trace(out / TRACE_FILE, trace)
    return [LEARNED_FILE, TRACE_FILE]


def _bag_outputs(out: Path, ensemble: Ensemble, alpha: float, labels):
    write_ensemble(out / ENSEMBLE_DIR, ensemble, labels)
    result = aggregate(ensemble, alpha)
    write_aggregate(out / AGG_FILE, out / CYCLIC_FILE, result, labels)
    members = [
        f"{ENSEMBLE_DIR}/member_{b:04d}.tsv" for b in range(ensemble.b_count)
    ]
    return [f"{ENSEMBLE_DIR}/manifest.txt", *members, AGG_FILE, CYCLIC_FILE]


def _cmd_bag(args, out: Path, seed: int):
    data = load_table(args.data)
    labels = list(data.labels) if data.labels else default_labels(data.p)
    constraints = _load_constraints(args, _label_index(labels))
    ensemble = learn_ensemble(
        data,
        args.boot,
        ScoreKind(args.score),
        eps=args.eps,
        max_steps=args.max_steps,
        constraints=constraints,
        seed=seed,
        jobs=args.jobs,
    )
    return _bag_outputs(out, ensemble, args.alpha, labels)


def _cmd_aggregate(args, out: Path, seed: int):
    ensemble, labels = read_ensemble(args.ensemble)
    result = aggregate(ensemble, args.alpha)
    write_aggregate(out / AGG_FILE, out / CYCLIC_FILE, result, labels)
    return [AGG_FILE, CYCLIC_FILE]


def _cmd_evaluate(args, out: Path, seed: int):
    learned, _ = read_edgelist(args.learned)
    truth, _ = read_edgelist(args.truth)
    report = evaluate(learned, truth)
    write_report(out / REPORT_FILE, report)
    print(format_report(report))
    return [REPORT_FILE]


def _cmd_curve(args, out: Path, seed: int):
    truth, _ = read_edgelist(args.truth)
    if (args.trace is None) == (args.aggregated is None):
        raise DagbagError("exactly one of --trace / --aggregated is required")
    init = None
    if args.init is not None:
        init, _ = read_edgelist(args.init)
    if args.trace is not None:
        steps = read_trace_operations(args.trace)
    else:
        p, edges, _ = read_aggregate_edges(args.aggregated)
        if p != truth.p:
            raise DagbagError(f"aggregated graph has {p} nodes, truth {truth.p}")
        steps = edges
    rows = learning_curve(steps, truth, init=init)
    write_curve(out / CURVE_FILE, rows)
    return [CURVE_FILE]


def _method_name(alpha: float) -> str:
    if alpha == 2:
        return "shd(2)"
    if alpha == 1:
        return "adjshd(1)"
    return f"gshd({alpha:g})"


def _cmd_replicate(args, out: Path, seed: int):
    if args.graph is not None and args.graph not in ("sparse-like", "random"):
        truth, labels = read_edgelist(args.graph)
    else:
        if args.p is None or args.edges is None:
            raise DagbagError("either --graph or both --p and --edges are required")
        truth = generate_random_dag(args.p, args.edges, seed)
        labels = default_labels(args.p)
    methods = ["score"] + [_method_name(a) for a in args.alphas]
    results = {m: [] for m in methods}
    for rep in range(args.reps):
        rep_seed = int(
            np.random.SeedSequence(entropy=(seed, rep)).generate_state(1)[0]
        )
        config = SimConfig(
            graph=truth,
            n=args.n,
            coef_range=args.coef,
            snr_range=args.snr,
            noise=Noise.parse(args.noise),
            seed=rep_seed,
        )
        data = simulate(config).data
        plain, _ = hill_climb(
            data, ScoreKind(args.score), eps=args.eps, max_steps=args.max_steps,
            seed=rep_seed,
        )
        results["score"].append(evaluate(plain, truth))
        ensemble = learn_ensemble(
            data, args.boot, ScoreKind(args.score), eps=args.eps,
            max_steps=args.max_steps, seed=rep_seed, jobs=args.jobs,
        )
        for alpha in args.alphas:
            agg = aggregate(ensemble, alpha)
            results[_method_name(alpha)].append(evaluate(agg.graph, truth))
    metrics = ("correct_e", "total_e", "correct_v", "total_v", "correct_m", "total_m")
    with open(out / TABLE_FILE, "w", encoding="utf-8") as fh:
        header = ["method"]
        for metric in metrics:
            header += [f"{metric}_mean", f"{metric}_sd"]
        fh.write("\t".join(header) + "\n")
        for method in methods:
            reports = results[method]
            cells = [method]
            for metric in metrics:
                vals = np.array([getattr(r, metric) for r in reports], dtype=float)
                cells += [f"{vals.mean():.2f}", f"{vals.std(ddof=1) if len(vals) > 1 else 0.0:.2f}"]
            fh.write("\t".join(cells) + "\n")
    return [TABLE_FILE]


# -- parser ---------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dagbag",
        description="Bootstrap-aggregated DAG structure learning",
    )
    parser.add_argument("--version", action="version", version=f"dagbag {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--seed", type=int, default=None,
                        help=f"RNG seed (default: ${SEED_ENV} or 0)")
        sp.add_argument("--out", default=".", help="output directory")

    sim = sub.add_parser("simulate", help="generate data from a linear mechanism")
    sim.add_argument("--p", type=int, default=None, help="node count for a random truth graph")
    sim.add_argument("--edges", type=int, default=None, help="edge count for a random truth graph")
    sim.add_argument("--graph", default=None, help="edge-list file to use as the truth graph")
    sim.add_argument("--n", type=int, required=True, help="sample size")
    sim.add_argument("--coef", type=_parse_range, default=(0.3, 0.5),
                     help="coefficient magnitude range LOW:HIGH (random sign)")
    sim.add_argument("--snr", type=_parse_range, default=(0.5, 1.5),
                     help="per-node signal-to-noise range LOW:HIGH")
    sim.add_argument("--noise", default="gaussian",
                     help="residual family: gaussian | t:DF | gamma:SHAPE:SCALE")
    common(sim)

    def search_flags(sp):
        sp.add_argument("--score", default="bic",
                        choices=[k.value for k in ScoreKind], help="score family")
        sp.add_argument("--eps", type=float, default=1e-6,
                        help="early-stopping threshold on the score decrease")
        sp.add_argument("--max-steps", type=int, default=2000, help="step budget")
        sp.add_argument("--blacklist", default=None, help="edge-list file of forbidden edges")
        sp.add_argument("--whitelist", default=None, help="edge-list file of forced edges")

    learn = sub.add_parser("learn", help="hill-climb one graph on one dataset")
    learn.add_argument("--data", required=True, help="CSV/TSV sample matrix")
    search_flags(learn)
    learn.add_argument("--truth", default=None,
                       help="edge-list file; adds correct-edge counts to the trace")
    learn.add_argument("--restarts", type=int, default=0, help="random-restart rounds")
    learn.add_argument("--perturb", type=int, default=5,
                       help="random deletions/reversals per restart round")
    common(learn)

    bag = sub.add_parser("bag", help="bootstrap, learn an ensemble, aggregate")
    bag.add_argument("--data", required=True, help="CSV/TSV sample matrix")
    bag.add_argument("--boot", type=int, default=100, help="number of bootstrap resamples")
    search_flags(bag)
    bag.add_argument("--alpha", type=float, default=1.0,
                     help="reversal cost of the aggregation distance")
    bag.add_argument("--jobs", type=int, default=os.cpu_count() or 1,
                     help="parallel fit lanes (output is identical for any value)")
    common(bag)

    agg = sub.add_parser("aggregate", help="re-aggregate a stored ensemble")
    agg.add_argument("--ensemble", required=True, help="ensemble archive directory")
    agg.add_argument("--alpha", type=float, default=1.0)
    common(agg)

    ev = sub.add_parser("evaluate", help="score a learned graph against a truth graph")
    ev.add_argument("--learned", required=True, help="edge-list file")
    ev.add_argument("--truth", required=True, help="edge-list file")
    common(ev)

    curve = sub.add_parser("curve", help="learning curve along a trace or an aggregation")
    curve.add_argument("--trace", default=None, help="trace TSV from `learn`")
    curve.add_argument("--aggregated", default=None, help="aggregated TSV from `bag`")
    curve.add_argument("--init", default=None, help="edge-list of the trace's initial graph")
    curve.add_argument("--truth", required=True, help="edge-list file")
    common(curve)

    rep = sub.add_parser("replicate", help="repeat simulate/learn/bag and tabulate")
    rep.add_argument("--p", type=int, default=None)
    rep.add_argument("--edges", type=int, default=None)
    rep.add_argument("--graph", default=None,
                     help="edge-list file for a fixed truth graph, or 'sparse-like' "
                          "to draw a random graph from --p/--edges")
    rep.add_argument("--n", type=int, required=True)
    rep.add_argument("--coef", type=_parse_range, default=(0.3, 0.5))
    rep.add_argument("--snr", type=_parse_range, default=(0.5, 1.5))
    rep.add_argument("--noise", default="gaussian")
    rep.add_argument("--reps", type=int, default=10, help="independent replicates")
    rep.add_argument("--boot", type=int, default=100)
    rep.add_argument("--alphas", type=_parse_alphas, default=(2.0, 1.0),
                     help="comma-separated aggregation alphas")
    rep.add_argument("--score", default="bic", choices=[k.value for k in ScoreKind])
    rep.add_argument("--eps", type=float, default=1e-6)
    rep.add_argument("--max-steps", type=int, default=2000)
    rep.add_argument("--jobs", type=int, default=os.cpu_count() or 1)
    common(rep)

    return parser


_HANDLERS = {
    "simulate": _cmd_simulate,
    "learn": _cmd_learn,
    "bag": _cmd_bag,
    "aggregate": _cmd_aggregate,
    "evaluate": _cmd_evaluate,
    "curve": _cmd_curve,
    "replicate": _cmd_replicate,
}


def main(argv=None) -> int:
    argv = list(sys.argv[1:]) if argv is None else list(argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    seed = _resolve_seed(args)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    started = datetime.now(timezone.utc).isoformat()
    begin = time.perf_counter()
    try:
        outputs = _HANDLERS[args.command](args, out, seed)
    except (DagbagError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    _write_manifest(out, args, argv, seed, outputs, started, time.perf_counter() - begin)
    return 0


if __name__ == "__main__":
    sys.exit(main())
