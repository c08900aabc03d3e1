"""Small fixtures with prescribed behavior, found by seeded search.

* ``search_fragile_but_two_nf``: 4 nodes, controllable, breaks when v4 is
  lost, yet survives the loss of any two of v2, v3, v4.
* ``search_preservation_gap``: 5 nodes whose group {v4, v5} stays connected
  to the leader after losing v3, while the rows of v4 and v5 become
  dependent for the drawn weights.
* ``split_group_graph``: 8 nodes whose group {v4..v8} induces two pieces;
  losing v3 cuts {v6, v7, v8} off from the leader.

Weights are drawn from {1, 2, 3}: exact symmetries (and thus rank loss)
have probability zero under continuous weights.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .graph import WeightedGraph, compress, from_edges, is_connected
from .preservation import check_preservation_numeric, check_preservation_structural
from .system import MasSystem, is_controllable, subsystem_after_removal

NAMES = [f"v{i}" for i in range(1, 9)]
SQUARE = from_edges([("v1", "v2"), ("v1", "v3"), ("v2", "v4"), ("v3", "v4")])


@dataclass(frozen=True)
class SearchResult:
    system: MasSystem
    seed: int
    trials: int


def _int_weights(rng, m: int) -> list[float]:
    return [float(w) for w in rng.integers(1, 4, size=m)]


def is_fragile_but_two_nf(sys: MasSystem) -> bool:
    if not is_controllable(sys):
        return False
    if is_controllable(subsystem_after_removal(sys, ["v4"])):
        return False
    return all(
        is_controllable(subsystem_after_removal(sys, pair)) for pair in combinations(["v2", "v3", "v4"], 2)
    )


def search_fragile_but_two_nf(seed: int = 42, max_trials: int = 100_000) -> SearchResult:
    rng = np.random.default_rng(seed)
    names = NAMES[:4]
    pairs = list(combinations(names, 2))
    for trial in range(1, max_trials + 1):
        chosen = [e for e in pairs if rng.random() < 0.6]
        g = WeightedGraph(names, [(u, v, w) for (u, v), w in zip(chosen, _int_weights(rng, len(chosen)))])
        if not is_connected(g):
            continue
        sys = MasSystem(g, "v1")
        if is_fragile_but_two_nf(sys):
            return SearchResult(sys, seed, trial)
    raise RuntimeError("no fixture found")


def has_preservation_gap(sys: MasSystem) -> bool:
    vq, vprime = ["v4", "v5"], ["v3"]
    if not is_controllable(sys):
        return False
    if not check_preservation_structural(sys, vq, vprime).structurally_preserved:
        return False
    return not check_preservation_numeric(sys, vq, vprime).partially_controllable


def compresses_to_square(g: WeightedGraph) -> bool:
    """{v4, v5} compresses to a node q with v1-v2-q-v3-v1 a 4-cycle."""
    try:
        cg, q = compress(g, ["v4", "v5"], name="v4")
    except ValueError:
        return False
    return q == "v4" and cg == SQUARE


def search_preservation_gap(seed: int = 42, max_trials: int = 100_000) -> SearchResult:
    rng = np.random.default_rng(seed)
    names = NAMES[:5]
    fixed = [("v1", "v2"), ("v1", "v3"), ("v4", "v5")]
    optional = [("v2", "v4"), ("v2", "v5"), ("v3", "v4"), ("v3", "v5")]
    for trial in range(1, max_trials + 1):
        chosen = fixed + [e for e in optional if rng.random() < 0.5]
        g = WeightedGraph(names, [(u, v, w) for (u, v), w in zip(chosen, _int_weights(rng, len(chosen)))])
        if not compresses_to_square(g):
            continue
        sys = MasSystem(g, "v1")
        if has_preservation_gap(sys):
            return SearchResult(sys, seed, trial)
    raise RuntimeError("no fixture found")


def split_group_graph() -> MasSystem:
    """8 nodes; {v4, v5} hangs off v2 and v3, the chain v6-v7-v8 only off v3."""
    edges = [
        ("v1", "v2"),
        ("v1", "v3"),
        ("v2", "v4"),
        ("v2", "v5"),
        ("v3", "v4"),
        ("v4", "v5"),
        ("v3", "v6"),
        ("v6", "v7"),
        ("v7", "v8"),
    ]
    return MasSystem(WeightedGraph(NAMES, [(u, v, 1.0) for u, v in edges]), "v1")
