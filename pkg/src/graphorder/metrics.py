"""Label continuity error (LCE) and partition comparison metrics.

All LCE statistics take group sizes; only the fractions ``N_k / N`` and the
totals ``N`` and ``K`` enter the formulas, so fractional sizes are accepted
for the mean and variance (useful for idealized equipartitions).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import stats

from .partition import Partition


class UndefinedMetricError(ValueError):
    """The metric has no meaningful value for these inputs."""


def _check_pair(pi, sigma):
    if pi.n != sigma.n:
        raise ValueError(f"ordering has {pi.n} entries but partition has {sigma.n}")
    if pi.n < 2:
        raise ValueError("label continuity needs at least two elements")


def continuity_count(pi, sigma):
    """Number of neighbouring positions in ``pi`` that share a label."""
    _check_pair(pi, sigma)
    seq = sigma.labels[pi.inv]
    return int(np.count_nonzero(seq[1:] == seq[:-1]))


def label_continuity(pi, sigma):
    return continuity_count(pi, sigma) / (pi.n - 1)


def lce(pi, sigma):
    """1 - (K-1)/(N-1) - C, with K the number of non-empty groups.

    Evaluated as the integer (N - K - same) over N - 1 so a block-sorted
    sequence gives exactly 0.
    """
    same = continuity_count(pi, sigma)
    return (pi.n - sigma.k_nonempty - same) / (pi.n - 1)


def _sizes(sizes):
    s = np.asarray(sizes, dtype=np.float64)
    if s.ndim != 1 or s.size == 0 or (s <= 0).any():
        raise ValueError("group sizes must be a non-empty list of positive numbers")
    return s


def max_lce(sizes):
    """Largest LCE any sequence can reach for these group sizes."""
    s = _sizes(sizes)
    n, k, big = s.sum(), s.size, s.max()
    if n < 2:
        raise ValueError("need N >= 2")
    # one division of an exact numerator, so integer sizes give the correctly rounded value
    if big > math.ceil(n / 2):
        return float((2.0 * (n - big) - (k - 1)) / (n - 1))
    return float((n - k) / (n - 1))


def mean_lce(sizes):
    """Expected LCE under bootstrap-resampled labels."""
    s = _sizes(sizes)
    n, k = s.sum(), s.size
    if n < 2:
        raise ValueError("need N >= 2")
    q = s / n
    return float((n - k) / (n - 1) - (q * q).sum())


def var_lce(sizes):
    """Variance of the LCE under bootstrap-resampled labels."""
    s = _sizes(sizes)
    n = s.sum()
    if n < 2:
        raise ValueError("need N >= 2")
    q = s / n
    s2, s3 = float((q ** 2).sum()), float((q ** 3).sum())
    val = (s2 / (n - 1) + 2.0 * (n - 2) / (n - 1) ** 2 * s3
           - (3.0 * n - 5) / (n - 1) ** 2 * s2 * s2)
    return max(0.0, float(val))  # exact value is >= 0; drop rounding noise


def null_pmf(n, k):
    """P[(N-1) C = m] for m = 0..N-1 under i.i.d. uniform labels (equal groups)."""
    if n < 2:
        raise ValueError("need N >= 2")
    if k < 1 or n % k:
        raise ValueError("closed form needs equal group sizes: k must divide n")
    return stats.binom.pmf(np.arange(n), n - 1, 1.0 / k)


def normalized_lce(pi, sigma):
    """LCE divided by its random-sequence mean for the sizes of ``sigma``."""
    _check_pair(pi, sigma)
    base = mean_lce(sigma.nonempty_sizes)
    if base <= 0:
        raise UndefinedMetricError(
            f"mean LCE is {base:.3g} for these group sizes; normalized LCE is undefined")
    return lce(pi, sigma) / base


@dataclass(frozen=True)
class LceStats:
    continuity: float
    flips_same: int
    lce: float
    max_lce: float
    mean_lce: float
    var_lce: float
    normalized_lce: float

    FIELDS = ("continuity", "flips_same", "lce", "max_lce", "mean_lce", "var_lce",
              "normalized_lce")

    def row(self):
        return [getattr(self, f) for f in self.FIELDS]


def lce_stats(pi, sigma):
    sizes = sigma.nonempty_sizes
    value = lce(pi, sigma)
    mean = mean_lce(sizes)
    return LceStats(
        continuity=label_continuity(pi, sigma),
        flips_same=continuity_count(pi, sigma),
        lce=value,
        max_lce=float(max_lce(sizes)),
        mean_lce=float(mean),
        var_lce=float(var_lce(sizes)),
        normalized_lce=float(value / mean) if mean > 0 else float("nan"),
    )


@dataclass(frozen=True)
class NestedSplit:
    """Group ``split_group`` of ``parent_sizes`` divided into ``child_sizes``."""

    parent_sizes: tuple
    split_group: int
    child_sizes: tuple

    def __post_init__(self):
        a, b = self.child_sizes
        if a < 1 or b < 1:
            raise ValueError("child groups must be non-empty")
        if a + b != self.parent_sizes[self.split_group]:
            raise ValueError("child sizes must sum to the split group's size")


def nested_lce_bounds(split, n=None):
    """Bounds on LCE(pi, child) - LCE(pi, parent) over all sequences pi."""
    n = int(sum(split.parent_sizes)) if n is None else n
    if n < 2:
        raise ValueError("need N >= 2")
    a, b = split.child_sizes
    upper = (2 * min(a, b) - (1 if a == b else 0) - 1) / (n - 1)
    return -1.0 / (n - 1), upper


def nested_worst_case(split):
    """Labels (parent, child) along the identity sequence that attain the upper nested bound.

    Groups are laid out as consecutive blocks; inside the split block the
    two children alternate for as long as the smaller one lasts, starting
    with the larger child. The second child gets the new label ``K``.
    """
    sizes = list(split.parent_sizes)
    a, b = split.child_sizes
    small, large = (0, 1) if a <= b else (1, 0)
    m = min(a, b)
    inner = [large, small] * m + [large] * (max(a, b) - m)
    parent, child = [], []
    for g, size in enumerate(sizes):
        parent += [g] * size
        if g == split.split_group:
            child += [g if c == 0 else len(sizes) for c in inner]
        else:
            child += [g] * size
    return (Partition(parent, k=len(sizes)),
            Partition(child, k=len(sizes) + 1))


def max_group_fraction(sigma):
    return float(sigma.sizes.max() / sigma.n)


def _entropy(p):
    p = p[p > 0]
    return float(-(p * np.log(p)).sum())


def nmi(a, b):
    """2 I(a;b) / (H(a) + H(b)) with natural logarithms.

    When both partitions are a single group the ratio is 0/0; it is taken
    as 1 (the partitions coincide).
    """
    if a.n != b.n:
        raise ValueError("partitions have different sizes")
    _, ia = np.unique(a.labels, return_inverse=True)
    _, ib = np.unique(b.labels, return_inverse=True)
    ka, kb = ia.max() + 1, ib.max() + 1
    joint = np.zeros((ka, kb))
    np.add.at(joint, (ia, ib), 1.0)
    joint /= a.n
    pa, pb = joint.sum(axis=1), joint.sum(axis=0)
    ha, hb = _entropy(pa), _entropy(pb)
    if ha + hb == 0:
        if ka == kb:
            return 1.0
        raise UndefinedMetricError("entropies vanish")
    nz = joint > 0
    mi = float((joint[nz] * np.log(joint[nz] / np.outer(pa, pb)[nz])).sum())
    return min(1.0, max(0.0, 2.0 * mi / (ha + hb)))


def kendall_tau(a, b):
    """Kendall rank correlation between two orderings of the same elements."""
    if a.n != b.n:
        raise ValueError("orderings have different sizes")
    if a.n < 2:
        raise ValueError("need at least two elements")
    return float(stats.kendalltau(a.perm, b.perm).statistic)
