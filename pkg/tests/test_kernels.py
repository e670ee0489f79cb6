import itertools
from math import comb

import numpy as np
import pytest
from hypothesis import given, strategies as st

from graphorder import kernels

BACKENDS = kernels.available_backends()


def test_selected_backend_is_listed():
    assert kernels.BACKEND in BACKENDS


@pytest.mark.parametrize("name", sorted(BACKENDS))
@pytest.mark.parametrize("n,k", [(1, 3), (2, 2), (5, 2), (6, 3), (7, 4)])
def test_null_histogram_brute_force(name, n, k):
    impl = BACKENDS[name]
    hist = np.zeros(n, dtype=np.int64)
    for seq in itertools.product(range(k), repeat=n):
        hist[sum(a == b for a, b in zip(seq, seq[1:]))] += 1
    assert impl.null_flip_histogram(n, k).tolist() == hist.tolist()


@pytest.mark.parametrize("name", sorted(BACKENDS))
def test_null_histogram_binomial_counts(name):
    n, k = 9, 3
    expected = [k * comb(n - 1, m) * (k - 1) ** (n - 1 - m) for m in range(n)]
    assert BACKENDS[name].null_flip_histogram(n, k).tolist() == expected


@given(st.integers(1, 8), st.integers(1, 12), st.integers(0, 2 ** 32 - 1))
def test_backends_agree_on_counts_and_h2(rows, n, seed):
    rng = np.random.default_rng(seed)
    seqs = rng.integers(0, 3, size=(rows, n)).astype(np.int64)
    perms = np.stack([rng.permutation(n) for _ in range(rows)]).astype(np.int64)
    iu, ju = np.triu_indices(n, 1)
    keep = rng.random(iu.size) < 0.4
    u, v = iu[keep].astype(np.int64), ju[keep].astype(np.int64)
    outs = [(list(b.adjacent_equal_counts(seqs)), list(b.h2_batch(perms, u, v)))
            for b in BACKENDS.values()]
    assert all(o == outs[0] for o in outs)


@given(st.integers(2, 60), st.integers(1, 5), st.integers(0, 2 ** 32 - 1))
def test_backends_agree_on_lloyd(n, k, seed):
    k = min(k, n)
    rng = np.random.default_rng(seed)
    x = rng.normal(size=(n, 3))
    start = x[rng.choice(n, k, replace=False)].copy()
    results = []
    for b in BACKENDS.values():
        labels, it, hist = b.lloyd(x, start.copy(), 300, 1e-8)
        results.append((np.asarray(labels), it, np.asarray(hist)))
    for labels, it, hist in results[1:]:
        assert np.array_equal(labels, results[0][0])
        assert it == results[0][1]
        assert np.allclose(hist, results[0][2], rtol=1e-12, atol=1e-12)


@pytest.mark.parametrize("name", sorted(BACKENDS))
def test_lloyd_reseeds_empty_cluster(name):
    x = np.array([[0.0], [0.1], [0.2], [10.0]])
    centers = np.array([[0.1], [10.0], [100.0]])
    labels, _, _ = BACKENDS[name].lloyd(x, centers, 50, 1e-8)
    assert sorted(set(np.asarray(labels).tolist())) == [0, 1, 2]


def test_wrapper_validation():
    with pytest.raises(ValueError):
        kernels.null_flip_histogram(0, 2)


def test_env_var_forces_fallback():
    import os
    import subprocess
    import sys
    env = dict(os.environ, GRAPHORDER_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "import graphorder; print(graphorder.BACKEND)"],
                         capture_output=True, text=True, env=env, check=True)
    assert out.stdout.strip() == "python"
