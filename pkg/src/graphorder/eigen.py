"""Dense symmetric eigendecomposition with a fixed sign convention."""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np


class End(str, enum.Enum):
    SMALLEST = "smallest"
    LARGEST = "largest"


# relative threshold for the "first nonzero component" sign rule
SIGN_TOL = 1e-8
DEGENERACY_TOL = 1e-10


@dataclass(frozen=True)
class SpectrumResult:
    """Eigenpairs sorted by ascending eigenvalue.

    ``eigenvectors[:, i]`` belongs to ``eigenvalues[i]``. ``degenerate[i]``
    flags an eigenvalue within ``1e-10 * ||M||_F`` of a spectral neighbour,
    in which case the basis inside that eigenspace is arbitrary.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    degenerate: np.ndarray


def fix_signs(vecs):
    """Flip columns so the first component above the noise floor is positive."""
    vecs = np.array(vecs, dtype=np.float64, copy=True)
    for j in range(vecs.shape[1]):
        col = vecs[:, j]
        big = np.flatnonzero(np.abs(col) > SIGN_TOL * np.abs(col).max())
        if big.size and col[big[0]] < 0:
            vecs[:, j] = -col
    return vecs


class FullSpectrum:
    """Full decomposition of one matrix; slices are views onto it."""

    def __init__(self, m):
        m = np.asarray(m, dtype=np.float64)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError("matrix must be square")
        if not np.isfinite(m).all():
            raise ValueError("matrix has non-finite entries")
        vals, vecs = np.linalg.eigh(m)
        self.n = m.shape[0]
        self.norm = float(np.linalg.norm(m))
        self.values = vals
        self.vectors = fix_signs(vecs)
        gap = np.diff(vals) <= DEGENERACY_TOL * self.norm
        deg = np.zeros(self.n, dtype=bool)
        deg[:-1] |= gap
        deg[1:] |= gap
        self.degenerate = deg

    def take(self, k, which=End.SMALLEST):
        which = End(which)
        if not 1 <= k <= self.n:
            raise ValueError(f"k must lie in [1, {self.n}], got {k}")
        sl = slice(0, k) if which is End.SMALLEST else slice(self.n - k, self.n)
        return SpectrumResult(self.values[sl].copy(), self.vectors[:, sl].copy(),
                              self.degenerate[sl].copy())

    def vector(self, index_from_bottom):
        """Eigenvector by 0-based rank in ascending order (negative counts from the top)."""
        return self.vectors[:, index_from_bottom].copy()


def eig_symmetric(m, k, which=End.SMALLEST):
    """The ``k`` eigenpairs at one end of the spectrum of symmetric ``m``."""
    m = np.asarray(m, dtype=np.float64)
    if not 1 <= k <= m.shape[0]:
        raise ValueError(f"k must lie in [1, {m.shape[0]}], got {k}")
    return FullSpectrum(m).take(k, which)
