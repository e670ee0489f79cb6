import itertools
import math

import numpy as np
import pytest
from hypothesis import assume, given, strategies as st
from sklearn.metrics import normalized_mutual_info_score

from graphorder import Ordering, Partition, kendall_tau, label_continuity, lce, \
    max_group_fraction, max_lce, mean_lce, nested_lce_bounds, nmi, normalized_lce, \
    null_pmf, var_lce
from graphorder.metrics import (LceStats, NestedSplit, UndefinedMetricError,
                                continuity_count, lce_stats)


def lce_loop(order, labels):
    """Direct definition: walk the sequence and count equal neighbours."""
    n, k = len(labels), len(set(labels))
    seq = [labels[v] for v in order]
    same = sum(1 for i in range(n - 1) if seq[i] == seq[i + 1])
    return 1 - (k - 1) / (n - 1) - same / (n - 1)


def exact_moments(sizes):
    """Mean and variance of the LCE over all i.i.d. label sequences."""
    n, k = sum(sizes), len(sizes)
    q = np.asarray(sizes) / n
    mean = second = 0.0
    for s in itertools.product(range(k), repeat=n):
        p = float(np.prod(q[list(s)]))
        val = 1 - (k - 1) / (n - 1) - sum(a == b for a, b in zip(s, s[1:])) / (n - 1)
        mean += p * val
        second += p * val * val
    return mean, second - mean * mean


ident = Ordering.identity


def test_continuity_examples():
    assert label_continuity(ident(4), Partition([0, 0, 1, 1])) == pytest.approx(2 / 3)
    assert label_continuity(Ordering([3, 1, 0, 2]), Partition([0, 0, 0, 0], k=1)) == 1
    assert label_continuity(ident(4), Partition([0, 1, 0, 1])) == 0
    assert continuity_count(ident(4), Partition([0, 0, 1, 1])) == 2


def test_lce_examples():
    assert lce(ident(6), Partition([0, 0, 1, 1, 1, 2])) == pytest.approx(0, abs=1e-15)
    assert lce(ident(4), Partition([0, 1, 0, 1])) == pytest.approx(2 / 3)
    assert max_lce([2, 2]) == pytest.approx(2 / 3)
    for perm in itertools.permutations(range(5)):
        assert lce(Ordering(perm), Partition(range(5))) == pytest.approx(0, abs=1e-15)


def test_lce_needs_two_elements():
    with pytest.raises(ValueError):
        lce(ident(1), Partition([0]))
    with pytest.raises(ValueError):
        lce(ident(3), Partition([0, 1]))


def test_max_lce_examples():
    assert max_lce([5] * 5) == pytest.approx(1 - 4 / 24)
    assert max_lce([21, 1, 1, 1, 1]) == pytest.approx(4 / 24)
    assert max_lce([7]) == 0


def test_mean_and_var_examples():
    assert mean_lce([5] * 5) == pytest.approx(20 / 24 - 1 / 5)
    assert mean_lce([9]) == 0
    assert var_lce([5] * 5) == pytest.approx(0.0066667, abs=5e-8)
    assert var_lce([9]) == pytest.approx(0, abs=1e-15)


@pytest.mark.parametrize("sizes", [(3, 2, 1), (2, 2, 2), (4, 1, 1), (5, 3), (2, 1, 1, 1)])
def test_moments_match_exact_enumeration(sizes):
    mean, var = exact_moments(sizes)
    assert mean_lce(sizes) == pytest.approx(mean, abs=1e-12)
    assert var_lce(sizes) == pytest.approx(var, abs=1e-12)


def test_variance_shrinks_with_n():
    vals = [var_lce([0.5 * n, 0.3 * n, 0.2 * n]) for n in (100, 1000, 10000)]
    assert vals[0] > vals[1] > vals[2] > 0


def test_null_pmf_examples():
    p = null_pmf(9, 3)
    assert p[0] == pytest.approx((2 / 3) ** 8, rel=1e-12)
    assert p[8] == pytest.approx((1 / 3) ** 8, rel=1e-12)
    assert p.sum() == pytest.approx(1, abs=1e-12)
    assert (np.arange(9) * p).sum() / 8 == pytest.approx(1 / 3)
    with pytest.raises(ValueError):
        null_pmf(10, 3)


def test_normalized_lce():
    assert normalized_lce(ident(6), Partition([0, 0, 0, 1, 1, 1])) == 0
    with pytest.raises(UndefinedMetricError):
        normalized_lce(ident(4), Partition([0, 0, 0, 0]))
    with pytest.raises(UndefinedMetricError):
        normalized_lce(ident(4), Partition([0, 1, 2, 3]))


def test_normalized_lce_random_orderings_average_one():
    rng = np.random.default_rng(0)
    sigma = Partition.from_sizes([500, 500])
    vals = np.array([normalized_lce(Ordering(rng.permutation(1000)), sigma)
                     for _ in range(1000)])
    se = vals.std(ddof=1) / math.sqrt(vals.size)
    assert abs(vals.mean() - 1) <= 3 * se


def test_lce_stats_row():
    s = lce_stats(ident(4), Partition([0, 1, 0, 1]))
    assert isinstance(s, LceStats)
    assert s.flips_same == 0 and s.lce == pytest.approx(s.max_lce)
    assert len(s.row()) == len(LceStats.FIELDS)
    assert all(type(x) in (int, float) for x in s.row())


def test_nested_bounds_examples():
    lo, hi = nested_lce_bounds(NestedSplit((6, 4), 1, (2, 2)), 10)
    assert (lo, hi) == (pytest.approx(-1 / 9), pytest.approx(2 / 9))
    assert nested_lce_bounds(NestedSplit((6, 4), 1, (1, 3)), 10)[1] == pytest.approx(1 / 9)
    with pytest.raises(ValueError):
        NestedSplit((6, 4), 1, (1, 2))


def test_max_group_fraction():
    assert max_group_fraction(Partition.from_sizes([2, 2, 2, 2])) == 0.25
    assert max_group_fraction(Partition.from_sizes([9, 1])) == 0.9
    assert max_group_fraction(Partition([0, 0, 0])) == 1


def test_nmi_examples():
    a = Partition([0, 0, 1, 1])
    assert nmi(a, a) == 1
    assert nmi(a, Partition([0, 1, 1, 1])) == pytest.approx(0.34371, abs=5e-6)
    assert nmi(a, Partition([1, 1, 0, 0])) == pytest.approx(1)
    assert nmi(Partition([0, 0, 0]), Partition([0, 0, 0])) == 1


def test_kendall_examples():
    a = Ordering([0, 1, 2])
    assert kendall_tau(a, a) == pytest.approx(1)
    assert kendall_tau(a, a.reversed()) == pytest.approx(-1)
    assert kendall_tau(a, Ordering([0, 2, 1])) == pytest.approx(1 / 3)
    with pytest.raises(ValueError):
        kendall_tau(a, Ordering([0, 1]))


def kendall_pairs(p, q):
    n = len(p)
    s = sum(np.sign(p[i] - p[j]) * np.sign(q[i] - q[j])
            for i in range(n) for j in range(i + 1, n))
    return s / (n * (n - 1) / 2)


@given(st.integers(2, 12).flatmap(lambda n: st.tuples(st.permutations(range(n)),
                                                       st.permutations(range(n)))))
def test_kendall_matches_pair_count(pq):
    p, q = pq
    assert kendall_tau(Ordering(p), Ordering(q)) == pytest.approx(kendall_pairs(p, q))


labelings = st.integers(2, 30).flatmap(
    lambda n: st.tuples(st.lists(st.integers(0, 4), min_size=n, max_size=n),
                        st.lists(st.integers(0, 4), min_size=n, max_size=n)))


@given(labelings)
def test_nmi_matches_sklearn_and_is_symmetric(ab):
    a, b = (Partition(np.unique(x, return_inverse=True)[1]) for x in ab)
    assume(len(set(ab[0])) > 1 or len(set(ab[1])) > 1)
    ref = normalized_mutual_info_score(ab[0], ab[1], average_method="arithmetic")
    assert nmi(a, b) == pytest.approx(ref, abs=1e-12)
    assert nmi(a, b) == pytest.approx(nmi(b, a), abs=1e-15)
    perm = np.random.default_rng(len(ab[0])).permutation(a.k)
    assert nmi(Partition(perm[a.labels]), b) == pytest.approx(nmi(a, b), abs=1e-12)
    assert 0 <= nmi(a, b) <= 1


@given(st.integers(2, 20).flatmap(
    lambda n: st.tuples(st.permutations(range(n)),
                        st.lists(st.integers(0, 3), min_size=n, max_size=n))))
def test_lce_matches_loop_and_is_reversal_invariant(case):
    perm, labels = case
    sigma = Partition(np.unique(labels, return_inverse=True)[1])
    pi = Ordering(perm)
    assert lce(pi, sigma) == pytest.approx(lce_loop(pi.inv, sigma.labels.tolist()), abs=1e-12)
    assert lce(pi, sigma) == lce(pi.reversed(), sigma)
    stats = lce_stats(pi, sigma)
    assert 0 <= stats.continuity <= 1
    assert stats.lce <= stats.max_lce + 1e-12
    assert stats.var_lce >= 0
