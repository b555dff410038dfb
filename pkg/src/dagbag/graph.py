"""Directed acyclic graphs over dense integer node indices.

Nodes are 0-based indices; string labels exist only at the file boundary.
A ``Dag`` is immutable from the caller's perspective: edits go through
:func:`apply_operation`, which returns a new value, so graphs can be shared
read-only across concurrent fits.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import (
    CycleError,
    DataFormatError,
    DimensionMismatch,
    DuplicateEdge,
    MissingEdge,
)


class OpKind(enum.IntEnum):
    """Edge-mutation kinds, in tie-breaking order."""

    ADD = 0
    DELETE = 1
    REVERSE = 2


@dataclass(frozen=True, order=True)
class Operation:
    """A single edge mutation.

    Ordering is (kind, source, target), which is the deterministic
    tie-breaking order used by the search.
    """

    kind: OpKind
    source: int
    target: int

    def __post_init__(self):
        if self.source == self.target:
            raise ValueError("operation endpoints must differ")

    def __repr__(self):
        return f"{self.kind.name.lower()}({self.source}->{self.target})"


@dataclass(frozen=True)
class SkeletonGraph:
    """Undirected edge set; pairs stored once in (min, max) order."""

    p: int
    edges: frozenset

    def __contains__(self, pair) -> bool:
        a, b = pair
        return (min(a, b), max(a, b)) in self.edges

    def __len__(self) -> int:
        return len(self.edges)


@dataclass(frozen=True)
class VStructure:
    """Collider pattern i -> k <- j with i, j non-adjacent."""

    collider: int
    parent_pair: tuple

    def __post_init__(self):
        a, b = self.parent_pair
        if a >= b:
            raise ValueError("parent_pair must be in (min, max) order")
        if self.collider in self.parent_pair:
            raise ValueError("collider cannot be its own parent")


def is_acyclic(adjacency) -> bool:
    """True iff the 0/1 adjacency matrix has no directed cycle.

    Independent oracle: an iterative depth-first traversal over the raw
    matrix, consulting no caches.
    """
    a = np.asarray(adjacency, dtype=bool)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("adjacency must be square")
    if a.diagonal().any():
        raise ValueError("adjacency must have a zero diagonal")
    p = a.shape[0]
    children = [np.flatnonzero(a[i]) for i in range(p)]
    color = np.zeros(p, dtype=np.int8)  # 0 white, 1 on stack, 2 done
    for root in range(p):
        if color[root]:
            continue
        stack = [(root, 0)]
        color[root] = 1
        while stack:
            node, idx = stack[-1]
            kids = children[node]
            if idx < len(kids):
                stack[-1] = (node, idx + 1)
                child = kids[idx]
                if color[child] == 1:
                    return False
                if color[child] == 0:
                    color[child] = 1
                    stack.append((child, 0))
            else:
                color[node] = 2
                stack.pop()
    return True


class Dag:
    """DAG over ``p`` nodes: adjacency matrix, parent lists, reachability caches.

    ``adjacency[i, j]`` is True iff the edge i -> j is present. Ancestor and
    descendant sets use the REFLEXIVE transitive closure (each node is its own
    ancestor and descendant); the caches are filled lazily and marked valid by
    their presence.
    """

    __slots__ = ("p", "_adj", "_parents", "_anc", "_desc")

    def __init__(self, adjacency: np.ndarray, *, _validate: bool = True, _reach=None):
        adj = np.array(adjacency, dtype=bool)
        if _validate:
            if not is_acyclic(adj):
                raise CycleError("adjacency matrix contains a directed cycle")
        adj.flags.writeable = False
        self.p = adj.shape[0]
        self._adj = adj
        self._parents = tuple(
            tuple(np.flatnonzero(adj[:, j]).tolist()) for j in range(self.p)
        )
        if _reach is not None:
            self._anc, self._desc = _reach
        else:
            self._anc = None
            self._desc = None

    # -- constructors ------------------------------------------------------

    @classmethod
    def empty(cls, p: int) -> "Dag":
        if p <= 0:
            raise ValueError("node count must be positive")
        return cls(np.zeros((p, p), dtype=bool), _validate=False)

    @classmethod
    def from_edges(cls, p: int, edges: Iterable[tuple]) -> "Dag":
        adj = np.zeros((p, p), dtype=bool)
        for s, t in edges:
            if s == t:
                raise ValueError(f"self-loop {s}->{t}")
            if adj[s, t] or adj[t, s]:
                raise DuplicateEdge(f"edge between {s} and {t} listed twice")
            adj[s, t] = True
        return cls(adj)

    # -- basic accessors ---------------------------------------------------

    @property
    def adjacency(self) -> np.ndarray:
        """Read-only p x p boolean adjacency matrix."""
        return self._adj

    def parents(self, node: int) -> tuple:
        return self._parents[node]

    def children(self, node: int) -> tuple:
        return tuple(np.flatnonzero(self._adj[node]).tolist())

    @property
    def edges(self) -> tuple:
        """All directed edges in (source, target) lexicographic order."""
        return tuple(map(tuple, np.argwhere(self._adj).tolist()))

    @property
    def num_edges(self) -> int:
        return int(self._adj.sum())

    def has_edge(self, s: int, t: int) -> bool:
        return bool(self._adj[s, t])

    def __eq__(self, other):
        if not isinstance(other, Dag):
            return NotImplemented
        return self.p == other.p and np.array_equal(self._adj, other._adj)

    def __hash__(self):
        return hash((self.p, self._adj.tobytes()))

    def __repr__(self):
        return f"Dag(p={self.p}, edges={self.num_edges})"

    # -- reachability ------------------------------------------------------

    @property
    def cache_valid(self) -> bool:
        return self._desc is not None

    def _fill_reach(self) -> None:
        if self._desc is None:
            self._desc = reach_matrix(self._adj)
            self._desc.flags.writeable = False
        if self._anc is None:
            anc = self._desc.T.copy()
            anc.flags.writeable = False
            self._anc = anc

    def descendant_matrix(self) -> np.ndarray:
        """Row i = reflexive descendant set of node i, as a boolean mask."""
        self._fill_reach()
        return self._desc

    def ancestor_matrix(self) -> np.ndarray:
        self._fill_reach()
        return self._anc

    def descendants(self, node: int) -> frozenset:
        return frozenset(np.flatnonzero(self.descendant_matrix()[node]).tolist())

    def ancestors(self, node: int) -> frozenset:
        return frozenset(np.flatnonzero(self.ancestor_matrix()[node]).tolist())

    def topological_order(self) -> list:
        return topological_order_of(self._adj)


def topological_order_of(adj: np.ndarray) -> list:
    """Kahn ordering of an adjacency matrix; raises CycleError on a cycle."""
    from collections import deque

    p = adj.shape[0]
    indeg = adj.sum(axis=0).astype(int)
    ready = deque(np.flatnonzero(indeg == 0).tolist())
    order = []
    while ready:
        node = ready.popleft()
        order.append(node)
        for child in np.flatnonzero(adj[node]).tolist():
            indeg[child] -= 1
            if indeg[child] == 0:
                ready.append(child)
    if len(order) != p:
        raise CycleError("graph is not acyclic")
    return order


def reach_matrix(adj: np.ndarray) -> np.ndarray:
    """Reflexive-transitive closure of a DAG adjacency matrix.

    ``out[i, j]`` is True iff j is reachable from i (including j = i).
    Computed by a reverse-topological sweep, one row OR per edge.
    """
    p = adj.shape[0]
    out = np.eye(p, dtype=bool)
    for i in reversed(topological_order_of(adj)):
        for c in np.flatnonzero(adj[i]).tolist():
            out[i] |= out[c]
    return out


def ancestors(g: Dag, node: int) -> frozenset:
    """Reflexive ancestor set of ``node`` (includes ``node`` itself)."""
    return g.ancestors(node)


def descendants(g: Dag, node: int) -> frozenset:
    """Reflexive descendant set of ``node`` (includes ``node`` itself)."""
    return g.descendants(node)


def apply_operation(g: Dag, op: Operation) -> Dag:
    """Return a new graph with the edge mutation applied.

    Raises CycleError if the mutation would create a directed cycle,
    DuplicateEdge for adding a present pair, MissingEdge for deleting or
    reversing an absent edge. Reachability caches of the result are updated
    (incrementally for additions, recomputed lazily otherwise).
    """
    s, t = op.source, op.target
    if not (0 <= s < g.p and 0 <= t < g.p):
        raise ValueError(f"operation endpoints out of range for p={g.p}")
    adj = g.adjacency
    if op.kind == OpKind.ADD:
        if adj[s, t]:
            raise DuplicateEdge(f"edge {s}->{t} already present")
        if adj[t, s] or g.descendant_matrix()[t, s]:
            raise CycleError(f"adding {s}->{t} closes a cycle")
        new = adj.copy()
        new[s, t] = True
        desc = g.descendant_matrix()
        anc = g.ancestor_matrix()
        new_desc = desc.copy()
        new_anc = anc.copy()
        new_desc[anc[s]] |= desc[t]
        new_anc[desc[t]] |= anc[s]
        new_desc.flags.writeable = False
        new_anc.flags.writeable = False
        return Dag(new, _validate=False, _reach=(new_anc, new_desc))
    if op.kind == OpKind.DELETE:
        if not adj[s, t]:
            raise MissingEdge(f"no edge {s}->{t}")
        new = adj.copy()
        new[s, t] = False
        return Dag(new, _validate=False)
    if op.kind == OpKind.REVERSE:
        if not adj[s, t]:
            raise MissingEdge(f"no edge {s}->{t}")
        # cyclic iff another path s ~> t survives without the direct edge
        desc = g.descendant_matrix()
        others = [k for k in g.children(s) if k != t]
        if others and desc[others, t].any():
            raise CycleError(f"reversing {s}->{t} closes a cycle")
        new = adj.copy()
        new[s, t] = False
        new[t, s] = True
        return Dag(new, _validate=False)
    raise ValueError(f"unknown operation kind {op.kind!r}")


def skeleton(g: Dag) -> SkeletonGraph:
    """Undirected pair set obtained by dropping edge directions."""
    pairs = frozenset((min(s, t), max(s, t)) for s, t in g.edges)
    return SkeletonGraph(g.p, pairs)


def v_structures(g: Dag) -> frozenset:
    """All collider triples i -> k <- j with i, j non-adjacent."""
    adj = g.adjacency
    out = set()
    for k in range(g.p):
        pa = g.parents(k)
        for a_idx in range(len(pa)):
            for b_idx in range(a_idx + 1, len(pa)):
                i, j = pa[a_idx], pa[b_idx]
                if not (adj[i, j] or adj[j, i]):
                    out.add(VStructure(k, (i, j)))
    return frozenset(out)


def moral_graph(g: Dag) -> SkeletonGraph:
    """Skeleton plus an edge joining every co-parent pair of each collider."""
    pairs = set(skeleton(g).edges)
    for vs in v_structures(g):
        pairs.add(vs.parent_pair)
    return SkeletonGraph(g.p, frozenset(pairs))


def is_i_equivalent(g1: Dag, g2: Dag) -> bool:
    """True iff the two DAGs share skeleton edges and v-structures."""
    if g1.p != g2.p:
        raise DimensionMismatch(f"node counts differ: {g1.p} vs {g2.p}")
    return skeleton(g1).edges == skeleton(g2).edges and v_structures(
        g1
    ) == v_structures(g2)


# -- edge-list files -------------------------------------------------------

NODE_HEADER = "# nodes: "


def default_labels(p: int) -> list:
    return [f"x{i}" for i in range(p)]


def write_edgelist(path, g: Dag, labels: Optional[Sequence[str]] = None) -> None:
    """Write a UTF-8 TSV edge list: header line fixing the node order, then
    one ``source<TAB>target`` line per edge in (source, target) order."""
    labels = list(labels) if labels is not None else default_labels(g.p)
    if len(labels) != g.p:
        raise ValueError(f"{len(labels)} labels for p={g.p}")
    for lab in labels:
        if "," in lab or "\t" in lab or "\n" in lab:
            raise ValueError(f"label {lab!r} contains a reserved character")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(NODE_HEADER + ",".join(labels) + "\n")
        for s, t in g.edges:
            fh.write(f"{labels[s]}\t{labels[t]}\n")


def read_edgelist(path) -> tuple:
    """Read an edge-list TSV written by :func:`write_edgelist`.

    Returns (Dag, labels). The header line fixes the index order, so a
    write/read round trip is the identity.
    """
    path = Path(path)
    with open(path, encoding="utf-8") as fh:
        lines = fh.read().splitlines()
    if not lines or not lines[0].startswith(NODE_HEADER):
        raise DataFormatError(f"{path}: line 1: missing '{NODE_HEADER.strip()}' header")
    labels = lines[0][len(NODE_HEADER):].split(",")
    index = {lab: i for i, lab in enumerate(labels)}
    if len(index) != len(labels):
        raise DataFormatError(f"{path}: line 1: duplicate node labels")
    edges = []
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        parts = line.split("\t")
        if len(parts) != 2:
            raise DataFormatError(f"{path}: line {lineno}: expected 2 columns")
        try:
            edges.append((index[parts[0]], index[parts[1]]))
        except KeyError as exc:
            raise DataFormatError(
                f"{path}: line {lineno}: unknown node label {exc.args[0]!r}"
            ) from None
    return Dag.from_edges(len(labels), edges), labels
