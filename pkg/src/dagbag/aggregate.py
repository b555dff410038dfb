"""Ensemble aggregation under generalized structural Hamming distances.

The aggregated DAG minimizes the average distance to the ensemble. For the
distance family used here that score is a sum over edges of per-edge terms in
the (generalized) selection frequencies, so the minimizer is built greedily:
take every directed edge whose generalized selection frequency exceeds 1/2,
in decreasing order, skipping those that would close a cycle. The skipped
("cyclic") edges double as an optimality certificate: with at most one of
them, the greedy result is a global minimizer.

Threshold and ordering comparisons are done in exact rational arithmetic;
selection frequencies are integer counts over B, so floating-point boundary
errors would otherwise decide ties.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .bootstrap import Ensemble
from .errors import DataFormatError, DimensionMismatch
from .graph import NODE_HEADER, Dag, default_labels

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class SelectionTable:
    """Directed-edge selection counts over an ensemble of size ``b_count``."""

    counts: np.ndarray
    b_count: int

    def __post_init__(self):
        c = self.counts
        if c.ndim != 2 or c.shape[0] != c.shape[1]:
            raise ValueError("counts must be square")
        if np.diag(c).any():
            raise ValueError("self-loop counts must be zero")
        if c.min() < 0 or c.max() > self.b_count:
            raise ValueError("counts must lie in [0, b_count]")
        if (c + c.T).max() > self.b_count:
            raise ValueError("both directions of a pair cannot coexist in one DAG")
        c.flags.writeable = False

    @property
    def p(self) -> int:
        return self.counts.shape[0]

    @property
    def sf(self) -> np.ndarray:
        """Selection frequencies as floats (exact multiples of 1/b_count)."""
        return self.counts / self.b_count

    def gsf(self, alpha: float) -> np.ndarray:
        """Generalized selection frequencies: sf + (1 - alpha/2) * reversed sf."""
        return (self.counts + (1.0 - alpha / 2.0) * self.counts.T) / self.b_count

    def sf_of(self, s: int, t: int) -> Fraction:
        return Fraction(int(self.counts[s, t]), self.b_count)

    def gsf_of(self, s: int, t: int, alpha: Fraction) -> Fraction:
        return self.sf_of(s, t) + (1 - alpha / 2) * self.sf_of(t, s)


def selection_frequencies(ensemble: Ensemble) -> SelectionTable:
    """Exact per-edge selection counts over the ensemble."""
    counts = np.zeros((ensemble.p, ensemble.p), dtype=np.int64)
    for g in ensemble.graphs:
        counts += g.adjacency
    return SelectionTable(counts, ensemble.b_count)


def gshd_distance(g1: Dag, g2: Dag, alpha: float) -> float:
    """Distance between two DAGs: per unordered pair, 0 when the pair states
    agree, 1 when exactly one graph links the pair, ``alpha`` when both link
    it in opposite directions. alpha=2 is the adjacency-matrix l1 distance;
    alpha=1 ignores orientation flips' extra cost."""
    if g1.p != g2.p:
        raise DimensionMismatch(f"node counts differ: {g1.p} vs {g2.p}")
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    a1, a2 = g1.adjacency, g2.adjacency
    reversed_pairs = int(np.count_nonzero(a1 & a2.T))
    s1 = a1 | a1.T
    s2 = a2 | a2.T
    one_sided = int(np.count_nonzero(s1 ^ s2)) // 2
    return one_sided + alpha * reversed_pairs


@dataclass(frozen=True)
class AggregationResult:
    """Greedy aggregation output plus its optimality certificate."""

    graph: Dag
    cyclic_edges: tuple
    alpha: float
    certified_optimal: bool
    table: SelectionTable


def aggregation_score(g: Dag, table: SelectionTable, alpha: float) -> float:
    """Average distance from ``g`` to the ensemble, in closed form:
    sum over edges of (1 - 2*gsf) plus the ensemble constant sum(sf)."""
    if g.p != table.p:
        raise DimensionMismatch(f"node counts differ: {g.p} vs {table.p}")
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    gsf = table.gsf(alpha)
    constant = float(table.sf.sum())
    edges = g.adjacency
    return float((1.0 - 2.0 * gsf[edges]).sum()) + constant


def aggregation_score_exact(edges, table: SelectionTable, alpha: Fraction) -> Fraction:
    """Exact rational version of :func:`aggregation_score` over an edge set."""
    alpha = Fraction(alpha)
    constant = Fraction(int(table.counts.sum()), table.b_count)
    total = constant
    for s, t in edges:
        total += 1 - 2 * table.gsf_of(s, t, alpha)
    return total


def candidate_edges(table: SelectionTable, alpha: Fraction):
    """Directed edges with gsf strictly above 1/2, sorted by decreasing gsf
    with (source, target) breaking ties; exact arithmetic throughout."""
    alpha = Fraction(alpha)
    out = []
    counts = table.counts
    for s, t in np.argwhere((counts > 0) | (counts.T > 0)):
        gsf = table.gsf_of(int(s), int(t), alpha)
        if gsf > 1:
            raise ValueError("generalized selection frequency above one; "
                             "selection table violates its pair invariant")
        if gsf > HALF:
            out.append((gsf, int(s), int(t)))
    out.sort(key=lambda item: (-item[0], item[1], item[2]))
    return out


def aggregate(ensemble: Ensemble, alpha) -> AggregationResult:
    """Greedy distance-minimizing aggregation of the ensemble.

    Edges with generalized selection frequency > 1/2 are added in decreasing
    order; an edge failing the acyclic check goes to ``cyclic_edges`` instead.
    ``certified_optimal`` reports |cyclic_edges| <= 1, under which the result
    provably minimizes :func:`aggregation_score` over all DAGs.
    """
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    table = selection_frequencies(ensemble)
    ordered = candidate_edges(table, Fraction(alpha))
    p = ensemble.p
    adj = np.zeros((p, p), dtype=bool)
    desc = np.eye(p, dtype=bool)
    anc = np.eye(p, dtype=bool)
    cyclic = []
    for _, s, t in ordered:
        if desc[t, s]:
            cyclic.append((s, t))
            continue
        adj[s, t] = True
        anc_s = anc[s].copy()
        desc_t = desc[t].copy()
        desc[anc_s] |= desc_t
        anc[desc_t] |= anc_s
    graph = Dag(adj, _validate=False)
    return AggregationResult(
        graph, tuple(cyclic), float(alpha), len(cyclic) <= 1, table
    )


def shd_aggregate(ensemble: Ensemble) -> AggregationResult:
    """Aggregation under the plain structural Hamming distance (alpha = 2),
    where the generalized selection frequency reduces to the selection
    frequency itself."""
    return aggregate(ensemble, 2)


# -- aggregated-graph files --------------------------------------------------

AGG_HEADER = ("source", "target", "sf", "sf_reversed", "gsf")


def _write_edge_rows(fh, rows, labels):
    fh.write("\t".join(AGG_HEADER) + "\n")
    for s, t, sf, sf_rev, gsf in rows:
        fh.write(f"{labels[s]}\t{labels[t]}\t{sf!r}\t{sf_rev!r}\t{gsf!r}\n")


def write_aggregate(path, cyclic_path, result: AggregationResult,
                    labels: Optional[Sequence[str]] = None) -> None:
    """Aggregated edges (in selection order) and the cyclic-edge set, as TSV
    with selection-frequency columns."""
    table = result.table
    labels = list(labels) if labels is not None else default_labels(table.p)
    sf = table.sf
    gsf = table.gsf(result.alpha)
    ordered = candidate_edges(table, Fraction(result.alpha))
    cyclic = set(result.cyclic_edges)

    def row(s, t):
        return (s, t, float(sf[s, t]), float(sf[t, s]), float(gsf[s, t]))

    with open(path, "w", encoding="utf-8") as fh:
        fh.write(NODE_HEADER + ",".join(labels) + "\n")
        _write_edge_rows(fh, (row(s, t) for _, s, t in ordered if (s, t) not in cyclic), labels)
    with open(cyclic_path, "w", encoding="utf-8") as fh:
        fh.write(NODE_HEADER + ",".join(labels) + "\n")
        _write_edge_rows(fh, (row(s, t) for s, t in result.cyclic_edges), labels)


def read_aggregate_edges(path) -> tuple:
    """Read an aggregated-graph TSV; returns (p, ordered edges, labels)."""
    with open(path, encoding="utf-8") as fh:
        lines = fh.read().splitlines()
    if not lines or not lines[0].startswith(NODE_HEADER):
        raise DataFormatError(f"{path}: line 1: missing node header")
    labels = lines[0][len(NODE_HEADER):].split(",")
    index = {lab: i for i, lab in enumerate(labels)}
    edges = []
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip() or line.startswith("source\t"):
            continue
        cells = line.split("\t")
        if len(cells) != len(AGG_HEADER):
            raise DataFormatError(f"{path}: line {lineno}: expected {len(AGG_HEADER)} columns")
        try:
            edges.append((index[cells[0]], index[cells[1]]))
        except KeyError as exc:
            raise DataFormatError(
                f"{path}: line {lineno}: unknown node label {exc.args[0]!r}"
            ) from None
    return len(labels), edges, labels
