import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from netctrl.errors import InputError
from netctrl.graph import WeightedGraph, connected_components, from_edges, path_graph, star_graph
from netctrl.system import (
    MasSystem,
    controllability_matrix,
    controllability_rank,
    input_vector,
    is_controllable,
    laplacian,
    subsystem_after_removal,
)

from strategies import graphs


def star(w2=1.0, w3=1.0):
    return MasSystem(star_graph(2, weights=[w2, w3]), "v1")


def test_leader_must_be_a_node():
    with pytest.raises(InputError):
        MasSystem(path_graph(2), "x")


def test_laplacian_examples():
    assert np.array_equal(laplacian(WeightedGraph(["v1"])), [[0.0]])
    assert np.array_equal(laplacian(path_graph(2)), [[1, -1], [-1, 1]])
    assert np.array_equal(laplacian(path_graph(3)), [[1, -1, 0], [-1, 2, -1], [0, -1, 1]])


@given(graphs(min_n=1, max_n=10))
def test_laplacian_properties(g):
    L = laplacian(g)
    assert np.array_equal(L, L.T)
    assert np.abs(L.sum(axis=1)).max() <= 1e-12
    for u, v, w in g.edges:
        assert L[g.index(u), g.index(v)] == -w


def test_input_vector_examples():
    assert np.array_equal(input_vector(MasSystem(path_graph(3), "v1")), [1, 0, 0])
    assert np.array_equal(input_vector(MasSystem(path_graph(3), "v3")), [0, 0, 1])
    assert np.array_equal(input_vector(MasSystem(WeightedGraph(["v1"]), "v1")), [1])


def test_controllability_matrix_examples():
    cm = controllability_matrix(MasSystem(WeightedGraph(["v1"]), "v1"))
    assert np.array_equal(cm.q, [[1.0]])
    cm = controllability_matrix(MasSystem(path_graph(2), "v1"))
    assert np.array_equal(cm.q, [[1, -1], [0, 1]])
    cm = controllability_matrix(star())
    assert cm.node_order == ("v1", "v2", "v3")
    assert np.array_equal(cm.q[0], [1, -2, 6])
    assert np.array_equal(cm.q[1], [0, 1, -3])
    assert np.array_equal(cm.q[2], [0, 1, -3])
    assert controllability_rank(star()) == 2


def test_is_controllable_examples():
    assert not is_controllable(star())
    assert is_controllable(star(1.0, 2.0))
    assert np.isclose(np.linalg.det(controllability_matrix(star(1.0, 2.0)).q), -2.0)
    p = MasSystem(path_graph(3), "v1")
    assert is_controllable(p)
    assert np.isclose(np.linalg.det(controllability_matrix(p).q), 1.0)


@given(graphs(min_n=1, max_n=7))
def test_rank_matches_literal_controllability_matrix(g):
    sys = MasSystem(g, "v1")
    q = controllability_matrix(sys).q
    assert controllability_rank(sys) == np.linalg.matrix_rank(q, tol=1e-9 * max(1.0, np.abs(q).max()))


@given(graphs(min_n=2, max_n=9))
def test_disconnected_systems_are_uncontrollable(g):
    sys = MasSystem(g, "v1")
    if len(connected_components(g)) > 1:
        assert not is_controllable(sys)


@given(graphs(min_n=1, max_n=9), st.randoms(use_true_random=False))
def test_rank_is_invariant_under_relabeling(g, rnd):
    perm = list(g.nodes)
    rnd.shuffle(perm)
    relabel = dict(zip(g.nodes, [f"u{p}" for p in perm]))
    h = WeightedGraph(
        sorted(relabel.values()), [(relabel[u], relabel[v], w) for u, v, w in g.edges]
    )
    assert controllability_rank(MasSystem(g, "v1")) == controllability_rank(MasSystem(h, relabel["v1"]))


def test_path_with_terminal_leader_is_always_controllable():
    rng = np.random.default_rng(0)
    for _ in range(100):
        n = int(rng.integers(2, 9))
        ws = rng.uniform(0.1, 2.0, n - 1)
        names = [f"v{i + 1}" for i in range(n)]
        g = WeightedGraph(names, [(names[i], names[i + 1], w) for i, w in enumerate(ws)])
        assert is_controllable(MasSystem(g, "v1"))


def test_subsystem_after_removal_examples():
    p = MasSystem(path_graph(3), "v1")
    assert subsystem_after_removal(p, []) == p
    sub = subsystem_after_removal(p, ["v2"])
    assert sub.nodes == ("v1", "v3") and sub.graph.num_edges == 0
    assert controllability_rank(sub) == 1
    s = MasSystem(star_graph(3), "v1")
    assert subsystem_after_removal(s, ["v4"]).graph == star_graph(2)
    with pytest.raises(InputError, match="the leader can not be removed"):
        subsystem_after_removal(p, ["v1"])


def test_removal_recomputes_degrees():
    g = from_edges([("v1", "v2", 2.0), ("v2", "v3", 5.0)])
    sub = subsystem_after_removal(MasSystem(g, "v1"), ["v3"])
    assert np.array_equal(laplacian(sub), [[2, -2], [-2, 2]])
