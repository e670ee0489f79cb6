"""Planted-partition SBM and the ordered random graph model (ORGM)."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import Graph
from .partition import Partition


class InfeasibleParametersError(ValueError):
    """The requested (c, epsilon, ...) needs an edge probability above 1."""


def _check_common(n, c, epsilon):
    if n < 2:
        raise ValueError("need at least two vertices")
    if c <= 0:
        raise ValueError("average degree c must be positive")
    if not 0 <= epsilon <= 1:
        raise ValueError("epsilon must lie in [0, 1]")


def sbm_planted_params(n, k, c, epsilon):
    """(p_in, p_out) for equal groups with average degree c and p_out = epsilon p_in."""
    _check_common(n, c, epsilon)
    if k < 1 or n % k:
        raise ValueError(f"n={n} is not divisible by k={k}")
    p_in = c * k / (n * (1.0 + (k - 1) * epsilon))
    if p_in > 1:
        raise InfeasibleParametersError(f"p_in = {p_in:.4g} exceeds 1")
    return p_in, epsilon * p_in


@dataclass(frozen=True)
class SbmParams:
    n: int
    k: int
    c: float
    epsilon: float

    @property
    def sizes(self):
        return [self.n // self.k] * self.k

    @property
    def rates(self):
        return sbm_planted_params(self.n, self.k, self.c, self.epsilon)


def _band_in_count(n, band):
    return n * band - band * (band + 1) // 2


def orgm_params(n, c, epsilon, band):
    """(p_in, p_out) so that the expected average degree is c.

    The band region holds pairs with 0 < |i - j| <= band.
    """
    _check_common(n, c, epsilon)
    if not 1 <= band < n:
        raise ValueError("band must satisfy 1 <= band < n")
    n_in = _band_in_count(n, band)
    n_out = n * (n - 1) // 2 - n_in
    p_in = c * n / 2.0 / (n_in + epsilon * n_out)
    if p_in > 1:
        raise InfeasibleParametersError(f"p_in = {p_in:.4g} exceeds 1")
    return p_in, epsilon * p_in


@dataclass(frozen=True)
class OrgmParams:
    n: int
    c: float
    epsilon: float
    band: int

    @classmethod
    def from_ratio(cls, n, c, epsilon, band_ratio):
        return cls(n, c, epsilon, max(1, int(round(band_ratio * n))))

    @property
    def rates(self):
        return orgm_params(self.n, self.c, self.epsilon, self.band)


def _bernoulli_pairs(n, prob_of_pair, rng):
    iu, ju = np.triu_indices(n, k=1)
    keep = rng.random(iu.size) < prob_of_pair(iu, ju)
    return Graph(n, iu[keep], ju[keep])


def sbm_generate(params, seed):
    """One SBM draw; the planted partition uses contiguous blocks."""
    p_in, p_out = params.rates
    planted = Partition.from_sizes(params.sizes)
    lab = planted.labels
    rng = np.random.default_rng(seed)
    g = _bernoulli_pairs(params.n, lambda i, j: np.where(lab[i] == lab[j], p_in, p_out), rng)
    return g, planted


def orgm_generate(params, seed):
    """One ORGM draw; the planted sequence is the vertex index order."""
    p_in, p_out = params.rates
    rng = np.random.default_rng(seed)
    band = params.band
    return _bernoulli_pairs(params.n, lambda i, j: np.where(j - i <= band, p_in, p_out), rng)
