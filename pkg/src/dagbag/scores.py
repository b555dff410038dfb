"""Decomposable Gaussian scores built from per-neighborhood regressions.

A graph's score is the sum over nodes of ``n*log(RSS_i/n) + |pa_i| * penalty``
where RSS_i is the residual sum of squares of regressing column i on its
parent columns (no intercept; columns are standardized to mean zero). The
penalty per edge selects the score family.
"""

from __future__ import annotations

import enum
import math
from typing import Sequence

import numpy as np
import scipy.linalg

from .data import Dataset
from .errors import SingularDesign
from .graph import Dag

# Perfect fits are floored here before the logarithm so search totals stay
# finite; a perfect fit still wins every comparison it should.
RSS_FLOOR = 1e-10

# Smallest acceptable pivot of the parent design's orthogonal decomposition.
PIVOT_TOL = 1e-9

# Gram-path equivalent: fraction of a column's squared norm that must remain
# after projecting out the current parents (PIVOT_TOL squared is below float64
# rounding noise at these scales, so a relative guard is used instead).
GRAM_REL_TOL = 1e-12


class ScoreKind(str, enum.Enum):
    LOGLIK = "loglik"
    AIC = "aic"
    BIC = "bic"
    EBIC = "ebic"
    GIC = "gic"


def penalty_per_edge(kind: ScoreKind, n: int, p: int) -> float:
    """Per-edge model-complexity penalty of each score family."""
    kind = ScoreKind(kind)
    if kind is ScoreKind.LOGLIK:
        return 0.0
    if kind is ScoreKind.AIC:
        return 2.0
    if kind is ScoreKind.BIC:
        return math.log(n)
    if kind is ScoreKind.EBIC:
        return math.log(n) + 2.0 * math.log(p)
    if kind is ScoreKind.GIC:
        return math.log(math.log(n)) * math.log(p)
    raise ValueError(f"unknown score kind {kind!r}")


def neighborhood_rss(data: Dataset, node: int, parents: Sequence[int]) -> float:
    """RSS of regressing column ``node`` on the parent columns, no intercept.

    Uses a rank-revealing (pivoted QR) decomposition of the parent design;
    raises SingularDesign when the smallest pivot falls below tolerance,
    which signals collinear parents. The result is floored at RSS_FLOOR.
    """
    parents = list(parents)
    if node in parents:
        raise ValueError("node cannot be its own parent")
    if not data.standardized:
        raise ValueError("scores are defined on standardized data")
    if len(parents) >= data.n:
        raise ValueError("more parents than samples")
    y = data.values[:, node]
    if not parents:
        return max(float(y @ y), RSS_FLOOR)
    cols = data.values[:, parents]
    q, r, _ = scipy.linalg.qr(cols, mode="economic", pivoting=True)
    if np.abs(np.diag(r)).min() < PIVOT_TOL:
        raise SingularDesign(f"collinear parents {parents} for node {node}")
    proj = q.T @ y
    rss = float(y @ y - proj @ proj)
    return max(rss, RSS_FLOOR)


def neighborhood_score(
    data: Dataset, node: int, parents: Sequence[int], kind: ScoreKind
) -> float:
    """``n*log(RSS/n) + |parents| * penalty`` for one neighborhood."""
    rss = neighborhood_rss(data, node, parents)
    n = data.n
    return n * math.log(rss / n) + len(parents) * penalty_per_edge(kind, n, data.p)


def total_score(data: Dataset, g: Dag, kind: ScoreKind) -> float:
    """Sum of neighborhood scores over all nodes."""
    if g.p != data.p:
        raise ValueError(f"graph has {g.p} nodes, data {data.p} columns")
    return sum(
        neighborhood_score(data, j, g.parents(j), kind) for j in range(g.p)
    )


class GramCache:
    """Shared regression kernels over the p x p Gram matrix of the data.

    Every no-intercept regression on standardized columns has normal
    equations that are submatrices of X'X, so one Gram matrix serves all
    neighborhoods. This is the dominant cost saver in high-dimensional
    search: given a node's current parent set, the RSS of adding each of the
    p candidate parents comes out of one triangular solve.
    """

    def __init__(self, data: Dataset):
        if not data.standardized:
            raise ValueError("scores are defined on standardized data")
        self.n = data.n
        self.p = data.p
        x = np.ascontiguousarray(data.values)
        self.gram = x.T @ x
        self.diag = np.diag(self.gram).copy()

    def log_term(self, rss) -> np.ndarray:
        """n*log(RSS/n) with the RSS floor applied, elementwise."""
        return self.n * np.log(np.maximum(rss, RSS_FLOOR) / self.n)

    def base_and_candidates(self, node: int, parents: Sequence[int]):
        """RSS of ``node`` on ``parents`` plus the RSS after adding each
        candidate parent.

        Returns (rss, rss_add, ok): ``rss_add[k]`` is the RSS with candidate
        k appended (meaningless at k = node and k in parents) and ``ok[k]``
        is False where the augmented design is numerically singular, i.e.
        the operation must be treated as unscorable this step.
        """
        g = self.gram
        parents = list(parents)
        if not parents:
            rss = float(self.diag[node])
            denom = self.diag.copy()
            numer = g[:, node].copy()
        else:
            gss = g[np.ix_(parents, parents)]
            try:
                low = np.linalg.cholesky(gss)
            except np.linalg.LinAlgError:
                raise SingularDesign(
                    f"collinear parents {parents} for node {node}"
                ) from None
            half = scipy.linalg.solve_triangular(low, g[parents, :], lower=True)
            col = half[:, node]
            rss = float(self.diag[node] - col @ col)
            denom = self.diag - np.einsum("ij,ij->j", half, half)
            numer = g[:, node] - half.T @ col
        ok = denom > GRAM_REL_TOL * self.diag
        safe = np.where(ok, denom, 1.0)
        rss_add = np.maximum(rss - numer * numer / safe, 0.0)
        return max(rss, 0.0), rss_add, ok

    def drop_each(self, node: int, parents: Sequence[int]) -> np.ndarray:
        """RSS of ``node`` after removing each parent in turn (parent order)."""
        g = self.gram
        parents = list(parents)
        out = np.empty(len(parents))
        for i in range(len(parents)):
            rest = parents[:i] + parents[i + 1 :]
            if not rest:
                out[i] = self.diag[node]
                continue
            sub = g[np.ix_(rest, rest)]
            rhs = g[rest, node]
            sol = np.linalg.solve(sub, rhs)
            out[i] = max(float(self.diag[node] - rhs @ sol), 0.0)
        return out
