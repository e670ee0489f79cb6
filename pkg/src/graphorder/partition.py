"""Group labels over a vertex set."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True, eq=False)
class Partition:
    """Labels in ``0..k-1``; ``k`` defaults to ``max(label) + 1``.

    Empty groups are allowed only with ``allow_empty=True``.
    """

    labels: np.ndarray
    k: int | None = None
    allow_empty: bool = False

    def __post_init__(self):
        lab = np.array(self.labels, dtype=np.int64)
        if lab.ndim != 1 or lab.size == 0:
            raise ValueError("labels must be a non-empty 1-d array")
        if lab.min() < 0:
            raise ValueError("labels must be non-negative")
        k = int(lab.max()) + 1 if self.k is None else int(self.k)
        if lab.max() >= k:
            raise ValueError(f"label {lab.max()} out of range for k={k}")
        lab.setflags(write=False)
        object.__setattr__(self, "labels", lab)
        object.__setattr__(self, "k", k)
        if not self.allow_empty and (self.sizes == 0).any():
            raise ValueError("partition has empty groups")

    @property
    def n(self):
        return int(self.labels.size)

    @property
    def sizes(self):
        return np.bincount(self.labels, minlength=self.k)

    @property
    def nonempty_sizes(self):
        s = self.sizes
        return s[s > 0]

    @property
    def k_nonempty(self):
        return int((self.sizes > 0).sum())

    @classmethod
    def from_sizes(cls, sizes):
        """Contiguous blocks: the first ``sizes[0]`` elements get label 0, and so on."""
        return cls(np.repeat(np.arange(len(sizes)), sizes), k=len(sizes))

    def canonical(self):
        """Relabel groups by order of first appearance along the index."""
        _, first = np.unique(self.labels, return_index=True)
        order = np.argsort(first, kind="stable")
        remap = np.empty(self.labels.max() + 1, dtype=np.int64)
        remap[np.unique(self.labels)[order]] = np.arange(order.size)
        return Partition(remap[self.labels])

    def restrict(self, vertices):
        return Partition(self.labels[np.asarray(vertices)], k=self.k, allow_empty=True)

    def __eq__(self, other):
        return (isinstance(other, Partition) and self.k == other.k
                and np.array_equal(self.labels, other.labels))

    def __hash__(self):
        return hash((self.k, self.labels.tobytes()))

    def __repr__(self):
        return f"Partition(k={self.k}, sizes={self.sizes.tolist()})"
