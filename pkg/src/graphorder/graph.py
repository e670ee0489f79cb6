"""Undirected simple graphs and the edge-list format."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components


class EdgeListError(ValueError):
    """Malformed edge-list input."""


def _frozen(a, dtype):
    a = np.array(a, dtype=dtype)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class Graph:
    """Undirected simple graph on vertices ``0..n-1``.

    ``u`` and ``v`` hold one entry per edge. ``ids`` maps each vertex to the
    identifier it had in the source file (identity for generated graphs).
    """

    n: int
    u: np.ndarray
    v: np.ndarray
    ids: np.ndarray = field(default=None)

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("graph needs at least one vertex")
        u = _frozen(self.u, np.int64)
        v = _frozen(self.v, np.int64)
        if u.shape != v.shape or u.ndim != 1:
            raise ValueError("u and v must be 1-d arrays of equal length")
        if u.size:
            if min(u.min(), v.min()) < 0 or max(u.max(), v.max()) >= self.n:
                raise ValueError("edge endpoint out of range")
            if np.any(u == v):
                raise ValueError("self-loops are not allowed")
            lo, hi = np.minimum(u, v), np.maximum(u, v)
            if np.unique(lo * self.n + hi).size != u.size:
                raise ValueError("duplicate edges are not allowed")
        ids = np.arange(self.n) if self.ids is None else self.ids
        ids = _frozen(ids, np.int64)
        if ids.shape != (self.n,):
            raise ValueError("ids must have one entry per vertex")
        object.__setattr__(self, "u", u)
        object.__setattr__(self, "v", v)
        object.__setattr__(self, "ids", ids)

    @classmethod
    def from_edges(cls, n, edges, ids=None):
        edges = np.asarray(list(edges), dtype=np.int64).reshape(-1, 2)
        return cls(n, edges[:, 0], edges[:, 1], ids)

    @property
    def m(self):
        return int(self.u.size)

    @cached_property
    def degrees(self):
        d = np.bincount(self.u, minlength=self.n) + np.bincount(self.v, minlength=self.n)
        d.setflags(write=False)
        return d

    def adjacency(self):
        """Dense 0/1 adjacency matrix as float64 (a fresh copy)."""
        a = np.zeros((self.n, self.n))
        a[self.u, self.v] = 1.0
        a[self.v, self.u] = 1.0
        return a

    def edge_set(self):
        lo, hi = np.minimum(self.u, self.v), np.maximum(self.u, self.v)
        return set(zip(lo.tolist(), hi.tolist()))

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.edge_set() == other.edge_set()

    def __hash__(self):
        return hash((self.n, frozenset(self.edge_set())))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"

    def relabel(self, perm):
        """Graph with vertex ``i`` renamed to ``perm[i]``; ids travel along."""
        perm = np.asarray(perm, dtype=np.int64)
        ids = np.empty(self.n, dtype=np.int64)
        ids[perm] = self.ids
        return Graph(self.n, perm[self.u], perm[self.v], ids)

    def subgraph(self, vertices):
        """Induced subgraph on ``vertices`` (kept in the given order)."""
        vertices = np.asarray(vertices, dtype=np.int64)
        index = np.full(self.n, -1, dtype=np.int64)
        index[vertices] = np.arange(vertices.size)
        keep = (index[self.u] >= 0) & (index[self.v] >= 0)
        return Graph(vertices.size, index[self.u[keep]], index[self.v[keep]],
                     self.ids[vertices])

    def components(self):
        """Component label per vertex."""
        a = coo_matrix((np.ones(self.m), (self.u, self.v)), shape=(self.n, self.n))
        return connected_components(a, directed=False)[1]

    def largest_component(self):
        """Vertices of the largest connected component, ascending."""
        labels = self.components()
        sizes = np.bincount(labels)
        return np.flatnonzero(labels == np.argmax(sizes))

    def giant_components(self, min_fraction):
        """Vertices of every component with at least ``min_fraction * n`` vertices.

        Falls back to the largest component when none is big enough.
        """
        labels = self.components()
        sizes = np.bincount(labels)
        big = np.flatnonzero(sizes >= max(2.0, min_fraction * self.n))
        if big.size == 0:
            return self.largest_component()
        return np.flatnonzero(np.isin(labels, big))

    def to_edge_list(self):
        """Serialize with original ids, one ``u v`` pair per line."""
        return "".join(f"{a} {b}\n" for a, b in zip(self.ids[self.u].tolist(),
                                                    self.ids[self.v].tolist()))


def is_connected(g):
    if g.n == 1:
        return True
    return int(g.components().max()) == 0


@dataclass
class LoadReport:
    duplicates: int = 0
    self_loops: int = 0


def load_edge_list(text, report=None):
    """Parse whitespace-separated ``u v`` lines into a :class:`Graph`.

    Lines starting with ``#`` or ``%`` and blank lines are skipped. Vertex
    ids are compacted to ``0..n-1`` in order of first appearance on a kept
    edge; duplicate edges and self-loops are dropped and tallied in
    ``report`` when given. An input holding only self-loops is rejected.
    """
    report = LoadReport() if report is None else report
    index = {}
    seen = set()
    us, vs = [], []
    for lineno, line in enumerate(text.splitlines(), start=1):
        s = line.strip()
        if not s or s[0] in "#%":
            continue
        tokens = s.split()
        if len(tokens) != 2:
            raise EdgeListError(f"line {lineno}: expected 2 tokens, got {len(tokens)}")
        try:
            a, b = int(tokens[0]), int(tokens[1])
        except ValueError:
            raise EdgeListError(f"line {lineno}: non-integer token in {s!r}") from None
        if a < 0 or b < 0:
            raise EdgeListError(f"line {lineno}: negative vertex id")
        if a == b:
            # a self-loop alone does not introduce a vertex
            report.self_loops += 1
            continue
        key = (min(a, b), max(a, b))
        if key in seen:
            report.duplicates += 1
            continue
        seen.add(key)
        for t in (a, b):
            if t not in index:
                index[t] = len(index)
        us.append(index[a])
        vs.append(index[b])
    if not index:
        raise EdgeListError("edge list is empty")
    ids = np.empty(len(index), dtype=np.int64)
    for orig, new in index.items():
        ids[new] = orig
    return Graph(len(index), us, vs, ids)


def read_edge_list(path, report=None):
    with open(path, encoding="utf-8") as fh:
        return load_edge_list(fh.read(), report)
