"""Numeric sample matrices and their standardization state.

All scoring assumes standardized columns: mean zero and BIASED (1/n) sample
variance one, so the residual sum of squares of an empty regression is
exactly n and the empty graph scores exactly zero.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from .errors import DataFormatError


@dataclass(frozen=True)
class Dataset:
    """An n x p sample matrix; ``standardized`` records the column state."""

    values: np.ndarray
    standardized: bool
    labels: Optional[tuple] = field(default=None, compare=False)

    def __post_init__(self):
        v = self.values
        if v.ndim != 2:
            raise ValueError("values must be a 2-d matrix")
        if v.shape[0] < 2:
            raise ValueError("need at least 2 samples")
        v.flags.writeable = False

    @property
    def n(self) -> int:
        return self.values.shape[0]

    @property
    def p(self) -> int:
        return self.values.shape[1]


def standardize_columns(values: np.ndarray) -> np.ndarray:
    """Center each column and scale to biased (1/n) variance one.

    Raises ValueError when a column is constant, since such a column cannot
    be standardized and would break every regression that touches it.
    """
    v = np.asarray(values, dtype=np.float64)
    mean = v.mean(axis=0)
    sd = v.std(axis=0)  # ddof=0: biased variance
    # relative guard: a constant column's sd is rounding noise, not exactly 0
    bad = np.flatnonzero(sd <= 1e-12 * np.maximum(np.abs(mean), 1.0))
    if bad.size:
        raise ValueError(f"constant column(s) at index {bad.tolist()}")
    return (v - mean) / sd


def dataset_from_values(
    values, labels: Optional[Sequence[str]] = None, standardize: bool = True
) -> Dataset:
    """Build a Dataset, standardizing by default."""
    v = np.asarray(values, dtype=np.float64)
    if standardize:
        v = standardize_columns(v)
    lab = tuple(labels) if labels is not None else None
    if lab is not None and len(lab) != v.shape[1]:
        raise ValueError(f"{len(lab)} labels for p={v.shape[1]} columns")
    return Dataset(v, standardized=standardize, labels=lab)


def _sniff_delimiter(path: Path) -> str:
    if path.suffix.lower() in (".tsv", ".tab"):
        return "\t"
    return ","


def load_table(path, standardize: bool = True) -> Dataset:
    """Load an n x p CSV/TSV of reals, with an optional header row of names.

    A first row containing any non-numeric cell is taken as the header.
    Parse failures report the file, row and column. Columns are standardized
    unless ``standardize`` is False.
    """
    path = Path(path)
    delim = _sniff_delimiter(path)
    with open(path, newline="", encoding="utf-8") as fh:
        rows = [row for row in csv.reader(fh, delimiter=delim) if row]
    if not rows:
        raise DataFormatError(f"{path}: empty file")
    labels = None
    start = 0
    try:
        [float(cell) for cell in rows[0]]
    except ValueError:
        labels = [cell.strip() for cell in rows[0]]
        start = 1
    width = len(rows[start]) if len(rows) > start else 0
    data = np.empty((len(rows) - start, width), dtype=np.float64)
    for r, row in enumerate(rows[start:], start=start):
        if len(row) != width:
            raise DataFormatError(
                f"{path}: row {r + 1}: expected {width} columns, got {len(row)}"
            )
        for c, cell in enumerate(row):
            try:
                data[r - start, c] = float(cell)
            except ValueError:
                raise DataFormatError(
                    f"{path}: row {r + 1}, column {c + 1}: not a number: {cell!r}"
                ) from None
    if labels is not None and len(labels) != width:
        raise DataFormatError(f"{path}: header has {len(labels)} names, rows {width}")
    try:
        return dataset_from_values(data, labels=labels, standardize=standardize)
    except ValueError as exc:
        raise DataFormatError(f"{path}: {exc}") from None


def write_table(path, values: np.ndarray, labels: Optional[Sequence[str]] = None):
    """Write a sample matrix as CSV/TSV (delimiter chosen from the suffix)."""
    path = Path(path)
    delim = _sniff_delimiter(path)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, delimiter=delim)
        if labels is not None:
            writer.writerow(list(labels))
        for row in np.asarray(values):
            writer.writerow([repr(float(x)) for x in row])
