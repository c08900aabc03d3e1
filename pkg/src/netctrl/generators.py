"""Seeded random graphs used by the property tests, acceptance suite and scripts."""

from __future__ import annotations

from itertools import combinations

import numpy as np

from .cuts import cut_vertices
from .graph import WeightedGraph, is_connected


def labels(n: int) -> list[str]:
    return [f"v{i + 1}" for i in range(n)]


def _weights(rng: np.random.Generator, m: int, weights) -> list[float]:
    if weights == "int":
        return [float(w) for w in rng.integers(1, 3, size=m)]
    lo, hi = weights
    return [float(w) for w in rng.uniform(lo, hi, size=m)]


def random_connected_graph(
    rng: np.random.Generator, n: int, p: float | None = None, weights=(0.1, 2.0)
) -> WeightedGraph:
    """Erdos-Renyi draw conditioned on connectivity. ``weights`` is (lo, hi) or "int" for {1, 2}."""
    names = labels(n)
    while True:
        prob = rng.uniform(0.3, 0.8) if p is None else p
        pairs = [(a, b) for a, b in combinations(range(n), 2) if rng.random() < prob]
        ws = _weights(rng, len(pairs), weights)
        g = WeightedGraph(names, [(names[a], names[b], w) for (a, b), w in zip(pairs, ws)])
        if n == 1 or is_connected(g):
            return g


def reweight(rng: np.random.Generator, g: WeightedGraph, weights=(0.1, 2.0)) -> WeightedGraph:
    ws = _weights(rng, g.num_edges, weights)
    return WeightedGraph(g.nodes, [(u, v, w) for (u, v, _), w in zip(g.edges, ws)])


def length_one_graph(n: int, follower_edges, leader_weights=None) -> WeightedGraph:
    """Leader v1 adjacent to every follower, plus the given follower-follower edges."""
    names = labels(n)
    lw = leader_weights or [1.0] * (n - 1)
    edges = [(names[0], names[i], lw[i - 1]) for i in range(1, n)]
    edges += [(names[a], names[b], 1.0) for a, b in follower_edges]
    return WeightedGraph(names, edges)


def all_length_one_graphs(n: int):
    """Every graph on n labeled nodes in which v1 neighbors all followers."""
    pairs = list(combinations(range(1, n), 2))
    for mask in range(1 << len(pairs)):
        yield length_one_graph(n, [pairs[i] for i in range(len(pairs)) if mask >> i & 1])


def random_length_one_graph(rng: np.random.Generator, n: int) -> WeightedGraph:
    pairs = list(combinations(range(1, n), 2))
    p = rng.uniform(0.0, 1.0)
    return length_one_graph(n, [e for e in pairs if rng.random() < p])


def random_graph_with_follower_cut_vertex(rng: np.random.Generator, n: int) -> WeightedGraph:
    """Connected graph (leader v1) with at least one cut vertex among the followers."""
    while True:
        g = random_connected_graph(rng, n, p=rng.uniform(0.2, 0.6), weights=(1.0, 1.0))
        if cut_vertices(g, excluding=["v1"]):
            return g
