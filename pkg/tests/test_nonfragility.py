from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, settings

from netctrl.errors import InfeasibleError, InputError
from netctrl.generators import all_length_one_graphs, random_connected_graph
from netctrl.graph import (
    WeightedGraph,
    complete_graph,
    cycle_graph,
    num_components,
    path_graph,
    remove_nodes,
    star_graph,
)
from netctrl.nonfragility import (
    FRAGILE,
    SNF,
    check_d1_necessary,
    classify_brute_force,
    classify_graphic,
    is_p_nodes_nf,
    label_for,
    synthesize_snf_weights,
)
from netctrl.reconstruct import search_fragile_but_two_nf
from netctrl.system import MasSystem, controllability_rank, is_controllable, subsystem_after_removal

from strategies import graphs

STAR12 = MasSystem(star_graph(2, weights=[1.0, 2.0]), "v1")
PATH = MasSystem(path_graph(3), "v1")


def test_labels():
    assert label_for(0, 4) == FRAGILE
    assert label_for(3, 4) == SNF
    assert label_for(2, 4) == "2-WNF"


def test_is_p_nodes_nf_examples():
    assert is_p_nodes_nf(MasSystem(path_graph(2), "v1"), 1) == (True, ())
    assert is_p_nodes_nf(PATH, 1) == (False, ("v2",))
    assert is_p_nodes_nf(STAR12, 1) == (True, ())


def test_is_p_nodes_nf_errors():
    with pytest.raises(InputError, match="controllable MASs"):
        is_p_nodes_nf(MasSystem(star_graph(2), "v1"), 1)
    with pytest.raises(InputError, match="p must lie"):
        is_p_nodes_nf(PATH, 3)
    with pytest.raises(InputError, match="p must lie"):
        is_p_nodes_nf(PATH, 0)
    with pytest.raises(InfeasibleError, match="graphic"):
        is_p_nodes_nf(MasSystem(path_graph(15), "v1"), 1)


def test_classify_brute_force_examples():
    rep = classify_brute_force(STAR12)
    assert rep.classification == SNF and rep.k == 2 and rep.breaking_set == ()
    assert rep.per_p == (True, True)
    rep = classify_brute_force(PATH)
    assert rep.classification == FRAGILE and rep.k == 0 and rep.breaking_set == ("v2",)
    assert rep.method == "brute-force" and rep.graphic_k == 0


def test_fragile_yet_two_nodes_nf_fixture():
    sys = search_fragile_but_two_nf().system
    rep = classify_brute_force(sys)
    assert rep.classification == FRAGILE
    assert rep.per_p[1] is True
    assert rep.breaking_set == ("v4",)


def test_classify_graphic_examples():
    rep = classify_graphic(star_graph(3), "v1")
    assert rep.classification == SNF and rep.graphic_k is None and rep.distance_length == 1
    assert rep.graphic_level == 3
    rep = classify_graphic(path_graph(3), "v1")
    assert rep.graphic_k == 0 and rep.classification == FRAGILE and rep.min_cutset == ("v2",)
    rep = classify_graphic(cycle_graph(4), "v1")
    assert rep.graphic_k == 1 and rep.classification == "1-WNF" and rep.breaking_set == ("v2", "v4")
    with pytest.raises(InputError):
        classify_graphic(WeightedGraph(["v1", "v2"]), "v1")


def test_check_d1_necessary_examples():
    assert check_d1_necessary(star_graph(3), "v1", 2)
    assert check_d1_necessary(path_graph(3), "v1", 0)
    assert not check_d1_necessary(cycle_graph(4), "v1", 2)


def test_synthesize_snf_examples():
    weights, _ = synthesize_snf_weights(star_graph(3), "v1")
    assert sorted(weights.values()) == [1.0, 2.0, 3.0]
    g = complete_graph(3)
    weights, M = synthesize_snf_weights(g, "v1")
    assert weights[("v1", "v2")] != weights[("v1", "v3")]
    assert weights[("v2", "v3")] == M <= 1.0
    assert classify_brute_force(MasSystem(g.with_weights(weights), "v1")).classification == SNF
    with pytest.raises(InputError, match="SNF requires every follower adjacent to the leader"):
        synthesize_snf_weights(path_graph(3), "v1")


def test_synthesize_snf_on_all_four_node_shapes():
    for g in all_length_one_graphs(4):
        weights, _ = synthesize_snf_weights(g, "v1")
        assert classify_brute_force(MasSystem(g.with_weights(weights), "v1")).classification == SNF


@settings(max_examples=40)
@given(graphs(min_n=2, max_n=7, connected=True))
def test_brute_force_never_beats_graphic(g):
    sys = MasSystem(g, "v1")
    if not is_controllable(sys):
        return
    rep = classify_brute_force(sys)
    assert rep.k <= rep.graphic_level
    assert len(rep.per_p) == sys.n - 1
    assert rep.per_p[: rep.k] == (True,) * rep.k
    if rep.breaking_set:
        assert len(rep.breaking_set) == rep.k + 1
        sub = subsystem_after_removal(sys, rep.breaking_set)
        assert controllability_rank(sub) < sys.n - len(rep.breaking_set)
    graphic = classify_graphic(g, "v1")
    if graphic.graphic_k is None:
        assert graphic.distance_length == 1
    else:
        assert check_d1_necessary(g, "v1", graphic.graphic_k)


def test_graphic_matches_definition_by_enumeration():
    rng = np.random.default_rng(21)
    for _ in range(30):
        g = random_connected_graph(rng, int(rng.integers(2, 8)))
        followers = [v for v in g.nodes if v != "v1"]
        best = None
        for k in range(1, len(followers) + 1):
            for cand in combinations(followers, k):
                if num_components(remove_nodes(g, cand)) > 1:
                    best = k
                    break
            if best:
                break
        rep = classify_graphic(g, "v1")
        assert rep.graphic_k == (None if best is None else best - 1)
