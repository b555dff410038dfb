"""Bootstrap resampling of the data and parallel learning of a DAG ensemble.

Every fit's randomness derives only from (seed, resample index), so the
ensemble is identical whether fits run sequentially or across worker
processes, and identical for any worker count.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from .data import Dataset, dataset_from_values
from .errors import DataFormatError, DegenerateResample, EnsembleFitError
from .graph import Dag, read_edgelist, write_edgelist
from .scores import ScoreKind
from .search import Constraints, hill_climb

RESAMPLE_ATTEMPTS = 100


@dataclass(frozen=True)
class EnsembleProvenance:
    seed: int
    b_count: int
    score: ScoreKind
    eps: float
    max_steps: int


@dataclass(frozen=True)
class Ensemble:
    """B learned DAGs sharing one node set."""

    graphs: tuple
    p: int
    provenance: Optional[EnsembleProvenance] = None

    def __post_init__(self):
        if len(self.graphs) < 1:
            raise ValueError("ensemble needs at least one graph")
        for g in self.graphs:
            if g.p != self.p:
                raise ValueError("ensemble graphs disagree on node count")

    @property
    def b_count(self) -> int:
        return len(self.graphs)


def _resample_indices(n: int, seed: int, stream: int, attempt: int) -> np.ndarray:
    rng = np.random.default_rng(np.random.SeedSequence(entropy=(seed, stream, attempt)))
    return rng.integers(0, n, size=n)


def bootstrap_resample(
    data: Dataset, seed: int, stream: int = 0, max_attempts: int = RESAMPLE_ATTEMPTS
) -> Dataset:
    """n rows drawn uniformly with replacement, then re-standardized.

    Generator contract (fixed so resamples are reproducible across
    implementations): row indices are
    ``default_rng(SeedSequence(entropy=(seed, stream, attempt))).integers(0, n, size=n)``
    where ``attempt`` is the first value in 0..max_attempts-1 whose draw
    leaves no column constant. Raises DegenerateResample when every attempt
    produces a constant column.
    """
    values = data.values
    for attempt in range(max_attempts):
        idx = _resample_indices(data.n, seed, stream, attempt)
        try:
            return dataset_from_values(values[idx], labels=data.labels, standardize=True)
        except ValueError:
            continue  # constant column; retry with the next substream
    raise DegenerateResample(
        f"constant column in every resample after {max_attempts} attempts"
    )


def fit_seed(seed: int, b: int) -> int:
    """Per-fit search seed derived from (master seed, resample index)."""
    return int(np.random.SeedSequence(entropy=(seed, b)).generate_state(1)[0])


def _fit_one(args):
    values, labels, seed, b, kind, eps, max_steps, blacklist, whitelist = args
    data = Dataset(np.asarray(values), standardized=True, labels=labels)
    resample = bootstrap_resample(data, seed, stream=b)
    constraints = Constraints(frozenset(blacklist), frozenset(whitelist))
    graph, _ = hill_climb(
        resample,
        kind,
        eps=eps,
        max_steps=max_steps,
        constraints=constraints,
        seed=fit_seed(seed, b),
    )
    return b, graph.adjacency


def learn_ensemble(
    data: Dataset,
    b_count: int,
    kind: ScoreKind = ScoreKind.BIC,
    *,
    eps: float = 1e-6,
    max_steps: int = 2000,
    constraints: Optional[Constraints] = None,
    seed: int = 0,
    jobs: int = 1,
) -> Ensemble:
    """Fit one DAG per bootstrap resample; resample b uses stream b."""
    if b_count < 1:
        raise ValueError("need at least one resample")
    kind = ScoreKind(kind)
    constraints = constraints or Constraints()
    args = [
        (
            data.values,
            data.labels,
            seed,
            b,
            kind,
            eps,
            max_steps,
            tuple(sorted(constraints.blacklist)),
            tuple(sorted(constraints.whitelist)),
        )
        for b in range(b_count)
    ]
    adjacencies = [None] * b_count
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futures = {pool.submit(_fit_one, a): a[3] for a in args}
            for future, b in futures.items():
                try:
                    idx, adj = future.result()
                except DegenerateResample:
                    raise
                except Exception as exc:  # noqa: BLE001 - tag with resample index
                    raise EnsembleFitError(b, str(exc)) from exc
                adjacencies[idx] = adj
    else:
        for a in args:
            try:
                idx, adj = _fit_one(a)
            except DegenerateResample:
                raise
            except Exception as exc:  # noqa: BLE001
                raise EnsembleFitError(a[3], str(exc)) from exc
            adjacencies[idx] = adj
    graphs = tuple(Dag(adj, _validate=False) for adj in adjacencies)
    prov = EnsembleProvenance(seed, b_count, kind, eps, max_steps)
    return Ensemble(graphs, data.p, prov)


# -- ensemble archive --------------------------------------------------------

MANIFEST_NAME = "manifest.txt"
MEMBER_FORMAT = "member_{:04d}.tsv"


def write_ensemble(directory, ensemble: Ensemble, labels: Optional[Sequence[str]] = None):
    """One edge-list file per member plus a key=value manifest."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    fields = {
        "p": ensemble.p,
        "b_count": ensemble.b_count,
        "member_format": MEMBER_FORMAT,
    }
    if ensemble.provenance is not None:
        prov = ensemble.provenance
        fields.update(
            seed=prov.seed,
            score=prov.score.value,
            eps=repr(prov.eps),
            max_steps=prov.max_steps,
        )
    with open(directory / MANIFEST_NAME, "w", encoding="utf-8") as fh:
        for key, val in fields.items():
            fh.write(f"{key}={val}\n")
    for b, g in enumerate(ensemble.graphs):
        write_edgelist(directory / MEMBER_FORMAT.format(b), g, labels)


def read_ensemble(directory) -> tuple:
    """Read an ensemble archive; returns (Ensemble, labels)."""
    directory = Path(directory)
    manifest = {}
    with open(directory / MANIFEST_NAME, encoding="utf-8") as fh:
        for line in fh:
            if "=" in line:
                key, val = line.rstrip("\n").split("=", 1)
                manifest[key] = val
    try:
        p = int(manifest["p"])
        b_count = int(manifest["b_count"])
    except KeyError as exc:
        raise DataFormatError(f"{directory}: manifest missing {exc.args[0]}") from None
    graphs = []
    labels = None
    for b in range(b_count):
        g, labels = read_edgelist(directory / MEMBER_FORMAT.format(b))
        if g.p != p:
            raise DataFormatError(f"{directory}: member {b} has p={g.p}, manifest {p}")
        graphs.append(g)
    prov = None
    if "seed" in manifest:
        prov = EnsembleProvenance(
            int(manifest["seed"]),
            b_count,
            ScoreKind(manifest.get("score", "bic")),
            float(manifest.get("eps", "1e-6")),
            int(manifest.get("max_steps", "2000")),
        )
    return Ensemble(tuple(graphs), p, prov), labels
