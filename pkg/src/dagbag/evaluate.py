"""Scoring a learned graph against ground truth on identifiable objects.

Skeleton edges, v-structures and moral edges are invariant across
I-equivalent DAGs, so counting them compares what the data could in
principle determine. ``correct_m`` intersects the learned graph's moral
edges with the truth's moral edges (both sides moralized).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Union

from .errors import DimensionMismatch
from .graph import Dag, OpKind, Operation, apply_operation, moral_graph, skeleton, v_structures
from .search import SearchTrace


@dataclass(frozen=True)
class EvalReport:
    """Learned-side totals and their overlap with the truth's object sets."""

    total_e: int
    correct_e: int
    total_v: int
    correct_v: int
    total_m: int
    correct_m: int
    truth_e: int
    truth_v: int
    truth_m: int

    def _ratio(self, num: int, den: int) -> float:
        return num / den if den else 0.0

    @property
    def precision_e(self) -> float:
        return self._ratio(self.correct_e, self.total_e)

    @property
    def recall_e(self) -> float:
        return self._ratio(self.correct_e, self.truth_e)

    @property
    def precision_v(self) -> float:
        return self._ratio(self.correct_v, self.total_v)

    @property
    def recall_v(self) -> float:
        return self._ratio(self.correct_v, self.truth_v)

    @property
    def precision_m(self) -> float:
        return self._ratio(self.correct_m, self.total_m)

    @property
    def recall_m(self) -> float:
        return self._ratio(self.correct_m, self.truth_m)


def evaluate(learned: Dag, truth: Dag) -> EvalReport:
    """Count the learned graph's skeleton edges, v-structures and moral
    edges, and how many of each lie in the truth's corresponding set."""
    if learned.p != truth.p:
        raise DimensionMismatch(f"node counts differ: {learned.p} vs {truth.p}")
    sk_l, sk_t = skeleton(learned).edges, skeleton(truth).edges
    vs_l, vs_t = v_structures(learned), v_structures(truth)
    mo_l, mo_t = moral_graph(learned).edges, moral_graph(truth).edges
    return EvalReport(
        total_e=len(sk_l),
        correct_e=len(sk_l & sk_t),
        total_v=len(vs_l),
        correct_v=len(vs_l & vs_t),
        total_m=len(mo_l),
        correct_m=len(mo_l & mo_t),
        truth_e=len(sk_t),
        truth_v=len(vs_t),
        truth_m=len(mo_t),
    )


def _as_operations(steps) -> list:
    ops = []
    for item in steps:
        if isinstance(item, Operation):
            ops.append(item)
        else:
            s, t = item
            ops.append(Operation(OpKind.ADD, int(s), int(t)))
    return ops


def learning_curve(
    steps: Union[SearchTrace, Iterable],
    truth: Dag,
    init: Optional[Dag] = None,
) -> list:
    """Per-step (total_e, correct_e, total_v, correct_v) along a trajectory.

    ``steps`` is a search trace, a sequence of operations, or a sequence of
    (source, target) pairs (pure additions, e.g. the selection-ordered edges
    of an aggregation). Each row is computed on the intermediate graph after
    applying that step to the running graph, starting from ``init`` (default
    empty); the last row therefore matches :func:`evaluate` of the final
    graph.
    """
    if isinstance(steps, SearchTrace):
        ops = steps.operations
    else:
        ops = _as_operations(steps)
    g = init if init is not None else Dag.empty(truth.p)
    if g.p != truth.p:
        raise DimensionMismatch(f"node counts differ: {g.p} vs {truth.p}")
    sk_t = skeleton(truth).edges
    vs_t = v_structures(truth)
    rows = []
    for op in ops:
        g = apply_operation(g, op)
        sk = skeleton(g).edges
        vs = v_structures(g)
        rows.append((len(sk), len(sk & sk_t), len(vs), len(vs & vs_t)))
    return rows


# -- report and curve files ---------------------------------------------------

REPORT_COLUMNS = (
    "total_e", "correct_e", "total_v", "correct_v", "total_m", "correct_m",
    "precision_e", "recall_e", "precision_v", "recall_v", "precision_m", "recall_m",
)


def format_report(report: EvalReport) -> str:
    cells = [
        str(report.total_e), str(report.correct_e),
        str(report.total_v), str(report.correct_v),
        str(report.total_m), str(report.correct_m),
        repr(report.precision_e), repr(report.recall_e),
        repr(report.precision_v), repr(report.recall_v),
        repr(report.precision_m), repr(report.recall_m),
    ]
    return "\t".join(cells)


def write_report(path, report: EvalReport) -> None:
    """Single-line TSV: the six counts plus per-class precision/recall."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\t".join(REPORT_COLUMNS) + "\n")
        fh.write(format_report(report) + "\n")


def write_curve(path, rows: Sequence[tuple]) -> None:
    """TSV learning curve, one row per step."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("step\ttotal_e\tcorrect_e\ttotal_v\tcorrect_v\n")
        for i, (te, ce, tv, cv) in enumerate(rows):
            fh.write(f"{i}\t{te}\t{ce}\t{tv}\t{cv}\n")
