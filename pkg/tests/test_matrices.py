import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from graphorder import Graph, MatrixKind, MatrixSpec, build_matrix, default_bethe_r, \
    default_reg_tau
from graphorder.matrices import ALL_KINDS, DegreeZeroError, MatrixConfigError, resolve

from conftest import erdos_renyi, path_graph, star


def ring(n):
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def circulant(n, offsets):
    return Graph.from_edges(n, sorted({tuple(sorted((i, (i + o) % n)))
                                       for i in range(n) for o in offsets}))


def test_unnormalized_laplacian_p3():
    L = build_matrix(path_graph(3), MatrixSpec("unnorm_laplacian"))
    assert L.tolist() == [[1, -1, 0], [-1, 2, -1], [0, -1, 1]]


def test_bethe_r1_equals_laplacian(rng):
    g = erdos_renyi(30, 0.2, rng)
    B = build_matrix(g, MatrixSpec("bethe_hessian", r=1.0))
    L = build_matrix(g, MatrixSpec("unnorm_laplacian"))
    assert np.array_equal(B, L)


@pytest.mark.parametrize("r", [0.5, 1.7, 3.0])
def test_bethe_matches_dense_formula(rng, r):
    g = erdos_renyi(25, 0.25, rng)
    A = g.adjacency()
    expected = np.diag(A.sum(axis=1)) - r * A
    B = build_matrix(g, MatrixSpec("bethe_hessian", r=r))
    assert np.allclose(B, expected, atol=1e-12)


def test_modularity_rows_sum_to_zero():
    Q = build_matrix(path_graph(3), MatrixSpec("modularity"))
    assert np.abs(Q.sum(axis=1)).max() <= 1e-12


@pytest.mark.parametrize("g,expected", [
    (ring(10), math.sqrt(1.0)),
    (star(3), 1.0),
    (path_graph(3), math.sqrt(0.5)),
])
def test_default_bethe_r(g, expected):
    assert default_bethe_r(g) == pytest.approx(expected, abs=1e-12)


def test_three_regular_r_is_sqrt2():
    g = circulant(12, [1, 6])  # degree 3: two ring neighbours plus the antipode
    assert set(g.degrees.tolist()) == {3}
    assert default_bethe_r(g) == pytest.approx(1.41421356, abs=1e-8)


def test_default_bethe_r_errors():
    with pytest.raises(MatrixConfigError):
        default_bethe_r(Graph(4, [], []))


@pytest.mark.parametrize("g,expected", [
    (path_graph(3), 4 / 3),
    (Graph(5, [], []), 0.0),
    (circulant(10, [1, 2]), 4.0),
])
def test_default_reg_tau(g, expected):
    assert default_reg_tau(g) == pytest.approx(expected)


def test_missing_hyperparameters():
    with pytest.raises(MatrixConfigError):
        build_matrix(path_graph(3), MatrixSpec("bethe_hessian"))
    with pytest.raises(MatrixConfigError):
        build_matrix(path_graph(3), MatrixSpec("reg_laplacian"))
    with pytest.raises(MatrixConfigError):
        MatrixSpec("unnorm_laplacian", r=2.0)
    with pytest.raises(MatrixConfigError):
        MatrixSpec("bethe_hessian", r=0.0)
    with pytest.raises(MatrixConfigError):
        resolve(Graph(3, [], []), MatrixSpec("reg_laplacian"))


def test_degree_zero_names_vertex():
    g = Graph.from_edges(4, [(0, 1), (1, 3)])
    with pytest.raises(DegreeZeroError) as info:
        build_matrix(g, MatrixSpec("norm_laplacian"))
    assert info.value.vertex == 2


def test_modularity_needs_edges():
    with pytest.raises(MatrixConfigError):
        build_matrix(Graph(3, [], []), MatrixSpec("modularity"))


def test_parse_kind():
    assert MatrixKind.parse("BETHE-HESSIAN") is MatrixKind.BETHE_HESSIAN
    assert MatrixKind.parse("norm_laplacian") is MatrixKind.NORM_LAPLACIAN
    with pytest.raises(ValueError):
        MatrixKind.parse("adjacency")


def test_regularized_limit_matches_normalized(rng):
    g = erdos_renyi(40, 0.2, rng)
    assert g.degrees.min() >= 1
    reg = build_matrix(g, MatrixSpec("reg_laplacian", tau=1e-8))
    norm = build_matrix(g, MatrixSpec("norm_laplacian"))
    assert np.abs(reg - (np.eye(g.n) - norm)).max() <= 1e-6


graphs = st.integers(2, 25).flatmap(
    lambda n: st.tuples(st.just(n), st.integers(0, 2 ** 32 - 1), st.floats(0.05, 0.9)))


def _draw(params):
    n, seed, p = params
    return erdos_renyi(n, p, np.random.default_rng(seed))


@given(graphs, st.sampled_from(ALL_KINDS), st.floats(0.1, 5.0), st.floats(0.1, 5.0))
def test_exact_symmetry(params, kind, r, tau):
    g = _draw(params)
    if g.m == 0 or (kind is MatrixKind.NORM_LAPLACIAN and g.degrees.min() == 0):
        return
    spec = MatrixSpec(kind, r=r if kind is MatrixKind.BETHE_HESSIAN else None,
                      tau=tau if kind in (MatrixKind.REG_LAPLACIAN,
                                          MatrixKind.REG_LAPLACIAN_TAU) else None)
    m = build_matrix(g, spec)
    assert np.array_equal(m, m.T)


@given(graphs)
def test_null_vectors(params):
    g = _draw(params)
    ones = np.ones(g.n)
    assert np.abs(build_matrix(g, MatrixSpec("unnorm_laplacian")) @ ones).max() <= 1e-12
    if g.m:
        assert np.abs(build_matrix(g, MatrixSpec("modularity")) @ ones).max() <= 1e-12


@given(graphs, st.floats(0.01, 10.0))
def test_regularized_trivial_pair_survives(params, tau):
    g = _draw(params)
    m = build_matrix(g, MatrixSpec("reg_laplacian_tau", tau=tau))
    x = np.sqrt(g.degrees + tau)
    assert np.abs(m @ x).max() <= 1e-10
