"""Spectral ordering: H2 objective, eigenvector choice and rank rounding."""

from __future__ import annotations

import csv
import io
import warnings
from dataclasses import dataclass

import numpy as np

from . import kernels
from .eigen import FullSpectrum
from .graph import is_connected
from .matrices import MatrixKind, MatrixSpec, build_matrix, default_bethe_r, resolve


class DisconnectedGraphWarning(UserWarning):
    pass


@dataclass(frozen=True, eq=False)
class Ordering:
    """A permutation: vertex ``i`` sits at position ``perm[i]``."""

    perm: np.ndarray

    def __post_init__(self):
        p = np.array(self.perm, dtype=np.int64)
        if p.ndim != 1 or not np.array_equal(np.sort(p), np.arange(p.size)):
            raise ValueError("perm must be a permutation of 0..n-1")
        p.setflags(write=False)
        object.__setattr__(self, "perm", p)

    @property
    def n(self):
        return int(self.perm.size)

    @property
    def inv(self):
        """``inv[position]`` is the vertex at that position."""
        out = np.empty_like(self.perm)
        out[self.perm] = np.arange(self.n)
        return out

    @classmethod
    def identity(cls, n):
        return cls(np.arange(n))

    @classmethod
    def from_sequence(cls, vertices):
        """Ordering that visits ``vertices`` in the given order."""
        vertices = np.asarray(vertices, dtype=np.int64)
        perm = np.empty_like(vertices)
        perm[vertices] = np.arange(vertices.size)
        return cls(perm)

    def reversed(self):
        return Ordering(self.n - 1 - self.perm)

    def __eq__(self, other):
        return isinstance(other, Ordering) and np.array_equal(self.perm, other.perm)

    def __hash__(self):
        return hash(self.perm.tobytes())

    def __repr__(self):
        return f"Ordering({self.perm.tolist()})"


def h2(pi, g):
    """Sum over edges of the squared distance between endpoint positions."""
    if pi.n != g.n:
        raise ValueError(f"ordering has {pi.n} entries but graph has {g.n} vertices")
    d = pi.perm[g.u] - pi.perm[g.v]
    return int((d * d).sum())


def h2_many(perms, g):
    """H2 for every row of an (r, n) array of permutations."""
    perms = np.atleast_2d(perms)
    if perms.shape[1] != g.n:
        raise ValueError("permutation width does not match graph size")
    return kernels.h2_batch(perms, g.u, g.v)


def rank_discretize(x):
    """Ascending ranks of ``x``; ties go to the smaller index first."""
    x = np.asarray(x, dtype=np.float64)
    if not np.isfinite(x).all():
        raise ValueError("cannot rank a vector with non-finite entries")
    order = np.argsort(x, kind="stable")
    return Ordering.from_sequence(order)


def spectrum_for(g, spec):
    """Resolve defaults, build the matrix and decompose it once."""
    spec = resolve(g, spec)
    return spec, FullSpectrum(build_matrix(g, spec))


def _scale(g, spec):
    d = g.degrees.astype(np.float64)
    if spec.kind is MatrixKind.NORM_LAPLACIAN:
        return 1.0 / np.sqrt(d)
    return 1.0 / np.sqrt(d + spec.tau)


def _not_constant(v, tol=1e-8):
    cos = abs(v.sum()) / (np.sqrt(v.size) * np.linalg.norm(v))
    return 1.0 - cos > tol


def ordering_vector(g, spec, spectrum=None, literal_reg=False):
    """The relaxed continuous sequence variable whose ranks give the ordering.

    ``literal_reg`` switches the ``reg_laplacian`` kind from its
    second-largest eigenvector (the default, which tends to the normalized
    Laplacian's Fiedler vector as tau -> 0) to its second-smallest one.
    """
    if spectrum is None:
        spec, spectrum = spectrum_for(g, spec)
    else:
        spec = resolve(g, spec)
    if g.n < 2:
        return np.zeros(g.n)
    kind = spec.kind
    if kind is MatrixKind.MODULARITY:
        v = spectrum.vector(-1)
        if not _not_constant(v):
            v = spectrum.vector(-2)
        return v
    if kind is MatrixKind.REG_LAPLACIAN and not literal_reg:
        z = spectrum.vector(-2)
    else:
        z = spectrum.vector(1)
    if kind in (MatrixKind.UNNORM_LAPLACIAN, MatrixKind.BETHE_HESSIAN):
        return z
    return _scale(g, spec) * z


def spectral_order(g, spec, spectrum=None, literal_reg=False):
    """Ordering from the rank of :func:`ordering_vector`."""
    if not is_connected(g):
        msg = "graph is disconnected; the ordering vector may be degenerate"
        if spectrum is not None and g.n > 1 and spectrum.degenerate[:2].any():
            msg += " (degenerate eigenvalues at the low end of the spectrum)"
        warnings.warn(msg, DisconnectedGraphWarning, stacklevel=2)
    return rank_discretize(ordering_vector(g, spec, spectrum, literal_reg))


def default_r_grid(g, points=30):
    """Log-spaced r values from 0.1 up to twice the default r."""
    return np.geomspace(0.1, 2.0 * default_bethe_r(g), points)


def bethe_sweep(g, r_grid, k_max):
    """H2 of the ordering from each of the ``k_max`` lowest Bethe Hessian vectors.

    Returns rows ``(r, k, h2)`` sorted by ``(r, k)``; ``k`` counts from 1.
    """
    if not 1 <= k_max <= g.n:
        raise ValueError(f"k_max must lie in [1, {g.n}]")
    rows = []
    for r in sorted(float(r) for r in r_grid):
        if r == 0:
            raise ValueError("r must be nonzero")
        full = FullSpectrum(build_matrix(g, MatrixSpec(MatrixKind.BETHE_HESSIAN, r=r)))
        perms = np.stack([rank_discretize(full.vector(j)).perm for j in range(k_max)])
        for j, val in enumerate(h2_many(perms, g)):
            rows.append((r, j + 1, int(val)))
    return rows


def sweep_to_csv(rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["r", "k", "h2"])
    for r, k, val in rows:
        w.writerow([repr(r), k, val])
    return buf.getvalue()
