"""Spectral clustering: eigenvector embeddings, K-means and sign bipartition."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .eigen import End
from .matrices import DEGREE_SCALED_KINDS, MatrixKind, resolve
from .ordering import spectrum_for
from .partition import Partition

N_RESTARTS = 50
MAX_ITER = 300
TOL = 1e-8

_LARGEST_END = (MatrixKind.MODULARITY, MatrixKind.REG_LAPLACIAN)


def informative_end(kind):
    return End.LARGEST if MatrixKind.parse(kind) in _LARGEST_END else End.SMALLEST


def spectral_embed(g, spec, k, spectrum=None):
    """N x k matrix of eigenvectors from the informative end of the spectrum.

    For the degree-normalized kinds each row is scaled by (d_i + tau)^(-1/2)
    (tau = 0 for the normalized Laplacian), the same rescaling the ordering
    uses.
    """
    if not 1 <= k <= g.n:
        raise ValueError(f"k must lie in [1, {g.n}], got {k}")
    if spectrum is None:
        spec, spectrum = spectrum_for(g, spec)
    else:
        spec = resolve(g, spec)
    points = spectrum.take(k, informative_end(spec.kind)).eigenvectors
    if spec.kind in DEGREE_SCALED_KINDS:
        tau = 0.0 if spec.kind is MatrixKind.NORM_LAPLACIAN else spec.tau
        points = points / np.sqrt(g.degrees + tau)[:, None]
    return np.ascontiguousarray(points)


@dataclass(frozen=True)
class KMeansResult:
    partition: Partition
    objective: float
    restart: int
    n_iter: int
    history: tuple


def kmeans_pp_init(x, k, rng):
    """k-means++ seeding; falls back to uniform picks once all points coincide with centers."""
    n = x.shape[0]
    chosen = [int(rng.integers(n))]
    d2 = ((x - x[chosen[0]]) ** 2).sum(axis=1)
    for _ in range(1, k):
        total = d2.sum()
        if total > 0:
            idx = int(np.searchsorted(np.cumsum(d2), rng.random() * total, side="right"))
            idx = min(idx, n - 1)
        else:
            free = np.setdiff1d(np.arange(n), chosen)
            idx = int(free[rng.integers(free.size)])
        chosen.append(idx)
        d2 = np.minimum(d2, ((x - x[idx]) ** 2).sum(axis=1))
    return x[chosen].copy()


def kmeans(points, k, seed, n_restarts=N_RESTARTS, max_iter=MAX_ITER, tol=TOL):
    """Lloyd K-means with k-means++ seeding and independent restarts.

    Restart ``i`` draws from the ``i``-th child of ``SeedSequence(seed)``.
    The lowest objective wins; objectives within 1e-12 relative count as a
    tie and go to the earlier restart.
    """
    x = np.ascontiguousarray(points, dtype=np.float64)
    if x.ndim == 1:
        x = x[:, None]
    n = x.shape[0]
    if not 1 <= k <= n:
        raise ValueError(f"k must lie in [1, {n}], got {k}")
    if not np.isfinite(x).all():
        raise ValueError("embedding has non-finite entries")
    best = None
    for i, child in enumerate(np.random.SeedSequence(seed).spawn(n_restarts)):
        rng = np.random.default_rng(child)
        centers = np.ascontiguousarray(kmeans_pp_init(x, k, rng))
        labels, n_iter, history = kernels.lloyd(x, centers, max_iter, tol)
        obj = history[-1]
        if best is None or obj < best[0] - 1e-12 * max(abs(best[0]), 1e-300):
            best = (obj, i, np.asarray(labels), n_iter, tuple(history))
    obj, i, labels, n_iter, history = best
    return KMeansResult(Partition(labels, k=k), float(obj), i, n_iter, history)


def bipartition_by_sign(x):
    """Two groups by the sign of ``x``, or split near the median if a sign is missing.

    Group 0 holds entries below the threshold. The median split sits
    between sorted ranks ceil(N/2)-1 and ceil(N/2), moved to the nearest
    boundary between distinct values when those two are equal.
    """
    x = np.asarray(x, dtype=np.float64)
    if not np.isfinite(x).all():
        raise ValueError("vector has non-finite entries")
    if x.size < 2 or x.min() == x.max():
        raise ValueError("constant vector carries no split")
    if x.min() < 0 <= x.max():
        return Partition((x >= 0).astype(np.int64), k=2)
    s = np.sort(x)
    cuts = np.flatnonzero(s[1:] > s[:-1]) + 1  # valid split positions
    mid = -(-x.size // 2)
    c = int(cuts[np.argmin(np.abs(cuts - mid))])
    threshold = 0.5 * (s[c - 1] + s[c])
    labels = (x >= threshold).astype(np.int64)
    if labels.min() == labels.max():
        # midpoint rounded onto a neighbour; fall back to the upper value
        labels = (x >= s[c]).astype(np.int64)
    return Partition(labels, k=2)


def spectral_cluster(g, spec, k, seed, spectrum=None):
    """K-means on :func:`spectral_embed`, labels canonicalized by first appearance."""
    if k == 1:
        return Partition(np.zeros(g.n, dtype=np.int64), k=1)
    emb = spectral_embed(g, spec, k, spectrum)
    return kmeans(emb, k, seed).partition.canonical()
