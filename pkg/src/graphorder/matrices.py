"""Dense symmetric matrix representations of a graph."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, replace

import numpy as np


class MatrixKind(str, enum.Enum):
    UNNORM_LAPLACIAN = "unnorm_laplacian"
    NORM_LAPLACIAN = "norm_laplacian"
    MODULARITY = "modularity"
    BETHE_HESSIAN = "bethe_hessian"
    REG_LAPLACIAN_TAU = "reg_laplacian_tau"
    REG_LAPLACIAN = "reg_laplacian"

    @classmethod
    def parse(cls, name):
        if isinstance(name, cls):
            return name
        key = str(name).strip().lower().replace("-", "_")
        for kind in cls:
            if key in (kind.value, kind.name.lower()):
                return kind
        raise ValueError(f"unknown matrix kind {name!r}; "
                         f"choose from {[k.value for k in cls]}")


ALL_KINDS = tuple(MatrixKind)


class MatrixConfigError(ValueError):
    """Missing or invalid hyperparameter for a matrix kind."""


class DegreeZeroError(ValueError):
    """A degree-normalized matrix was requested for a graph with an isolated vertex."""

    def __init__(self, vertex):
        super().__init__(f"vertex {vertex} has degree 0")
        self.vertex = vertex


@dataclass(frozen=True)
class MatrixSpec:
    """Matrix kind plus its scalar hyperparameter.

    ``r`` belongs to the Bethe Hessian, ``tau`` to the two regularized
    Laplacians. Use :func:`resolve` to fill graph-dependent defaults.
    """

    kind: MatrixKind
    r: float | None = None
    tau: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "kind", MatrixKind.parse(self.kind))
        if self.r is not None and self.kind is not MatrixKind.BETHE_HESSIAN:
            raise MatrixConfigError(f"r is only meaningful for bethe_hessian, not {self.kind.value}")
        if self.tau is not None and self.kind not in _TAU_KINDS:
            raise MatrixConfigError(f"tau is only meaningful for regularized Laplacians, "
                                    f"not {self.kind.value}")
        if self.r is not None and (not math.isfinite(self.r) or self.r <= 0):
            raise MatrixConfigError("r must be a positive finite number")
        if self.tau is not None and (not math.isfinite(self.tau) or self.tau <= 0):
            raise MatrixConfigError("tau must be a positive finite number")

    def check_complete(self):
        if self.kind is MatrixKind.BETHE_HESSIAN and self.r is None:
            raise MatrixConfigError("bethe_hessian requires r")
        if self.kind in _TAU_KINDS and self.tau is None:
            raise MatrixConfigError(f"{self.kind.value} requires tau")


_TAU_KINDS = (MatrixKind.REG_LAPLACIAN_TAU, MatrixKind.REG_LAPLACIAN)
DEGREE_SCALED_KINDS = (MatrixKind.NORM_LAPLACIAN,) + _TAU_KINDS


def default_bethe_r(g):
    """sqrt(sum d^2 / sum d - 1), the customary Bethe Hessian scale."""
    if g.m == 0:
        raise MatrixConfigError("default r is undefined for an edgeless graph")
    d = g.degrees.astype(np.float64)
    val = float((d * d).sum() / d.sum() - 1.0)
    if val <= 0:
        # only a perfect matching (all degrees 1) hits zero
        raise MatrixConfigError("default r is zero for a graph with all degrees equal to 1")
    return math.sqrt(val)


def default_reg_tau(g):
    """Average degree 2m/n."""
    return 2.0 * g.m / g.n


def resolve(g, spec):
    """Fill in missing hyperparameters with the graph defaults."""
    spec = spec if isinstance(spec, MatrixSpec) else MatrixSpec(spec)
    if spec.kind is MatrixKind.BETHE_HESSIAN and spec.r is None:
        return replace(spec, r=default_bethe_r(g))
    if spec.kind in _TAU_KINDS and spec.tau is None:
        tau = default_reg_tau(g)
        if tau <= 0:
            raise MatrixConfigError("average degree is 0; pass a positive tau explicitly")
        return replace(spec, tau=tau)
    return spec


def _require_positive_degrees(g):
    zero = np.flatnonzero(g.degrees == 0)
    if zero.size:
        raise DegreeZeroError(int(zero[0]))


def build_matrix(g, spec):
    """Dense symmetric matrix of ``spec.kind`` for graph ``g``.

    Every kind is assembled from symmetric pieces (outer products and
    elementwise products of symmetric arrays), so the result is exactly
    symmetric without any after-the-fact averaging.
    """
    spec = spec if isinstance(spec, MatrixSpec) else MatrixSpec(spec)
    spec.check_complete()
    kind = spec.kind
    a = g.adjacency()
    d = g.degrees.astype(np.float64)

    if kind is MatrixKind.UNNORM_LAPLACIAN:
        return np.diag(d) - a
    if kind is MatrixKind.NORM_LAPLACIAN:
        _require_positive_degrees(g)
        s = 1.0 / np.sqrt(d)
        return (np.diag(d) - a) * np.outer(s, s)
    if kind is MatrixKind.MODULARITY:
        if g.m == 0:
            raise MatrixConfigError("modularity matrix is undefined for an edgeless graph")
        return a - np.outer(d, d) / (2.0 * g.m)
    if kind is MatrixKind.BETHE_HESSIAN:
        return np.diag(d) - spec.r * a
    s = 1.0 / np.sqrt(d + spec.tau)
    w = np.outer(s, s)
    if kind is MatrixKind.REG_LAPLACIAN_TAU:
        return np.eye(g.n) - (a + spec.tau / g.n) * w
    return a * w
