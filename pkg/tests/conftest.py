import itertools

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from graphorder import Graph, is_connected

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def path_graph(n):
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def clique_edges(vertices):
    return list(itertools.combinations(vertices, 2))


def two_cliques(size=4, bridge=False):
    edges = clique_edges(range(size)) + clique_edges(range(size, 2 * size))
    if bridge:
        edges.append((size - 1, size))
    return Graph.from_edges(2 * size, edges)


def star(leaves):
    return Graph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def erdos_renyi(n, p, rng):
    iu, ju = np.triu_indices(n, k=1)
    keep = rng.random(iu.size) < p
    return Graph(n, iu[keep], ju[keep])


def connected_er(n, c, rng):
    while True:
        g = erdos_renyi(n, c / (n - 1), rng)
        if is_connected(g):
            return g


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[num])
