"""How many follower losses a controllable system survives.

A controllable system is p-nodes non-fragile when every removal of p
followers leaves a controllable subsystem. ``classify_brute_force`` answers
this for the given weights by enumeration. ``classify_graphic`` answers the
weight-free question (the best level any weight choice can reach) from the
minimum follower cutset.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .config import MAX_HALVINGS, NF_MAX_NODES, SNF_SYNTH_MAX_NODES
from .cuts import min_follower_cutset
from .errors import InfeasibleError, InputError
from .graph import NodeSet, WeightedGraph, edge_key, distance_partition, is_connected
from .system import MasSystem, controllability_rank, is_controllable, subsystem_after_removal

SNF = "SNF"
FRAGILE = "Fragile"


def label_for(k: int, n: int) -> str:
    if k >= n - 1:
        return SNF
    if k == 0:
        return FRAGILE
    return f"{k}-WNF"


@dataclass(frozen=True)
class FragilityReport:
    classification: str
    k: int
    breaking_set: NodeSet
    graphic_k: int | None  # None: no follower cutset, every level reachable
    method: str  # "brute-force" or "graphic"
    per_p: tuple[bool, ...] = ()  # brute force: entry p-1 says p-nodes NF
    distance_length: int | None = None
    min_cutset: NodeSet = ()
    n: int = 0

    @property
    def graphic_level(self) -> int:
        """graphic_k with the unbounded case read as n - 1 (SNF reachable)."""
        return self.n - 1 if self.graphic_k is None else self.graphic_k


def _require_controllable(sys: MasSystem, tol: float | None) -> None:
    if not is_controllable(sys, tol):
        raise InputError("non-fragility is discussed for controllable MASs")


def _first_breaking(sys: MasSystem, p: int, tol: float | None) -> NodeSet | None:
    for removed in combinations(sys.followers, p):
        sub = subsystem_after_removal(sys, removed)
        if controllability_rank(sub, tol) < sys.n - p:
            return removed
    return None


def _check_bound(sys: MasSystem, bound: int) -> None:
    if sys.n > bound:
        raise InfeasibleError(
            f"brute-force enumeration bound exceeded ({sys.n} > {bound} nodes); use the graphic method"
        )


def is_p_nodes_nf(
    sys: MasSystem, p: int, tol: float | None = None, bound: int = NF_MAX_NODES
) -> tuple[bool, NodeSet]:
    """Whether every removal of p followers keeps the remaining subsystem controllable.

    The witness is the first breaking removal in lexicographic index order,
    empty when none exists.
    """
    _require_controllable(sys, tol)
    if not 1 <= p <= sys.n - 1:
        raise InputError(f"p must lie in [1, {sys.n - 1}], got {p}")
    _check_bound(sys, bound)
    witness = _first_breaking(sys, p, tol)
    return witness is None, witness or ()


def classify_graphic(g: WeightedGraph, leader: str) -> FragilityReport:
    """Best non-fragility level reachable by some choice of weights."""
    if not is_connected(g):
        raise InputError("graphic classification requires a connected graph")
    length = distance_partition(g, leader).length
    cut = min_follower_cutset(g, leader)
    if cut.exists:
        k = cut.size - 1
        return FragilityReport(
            label_for(k, g.n),
            k,
            cut.witness,
            k,
            "graphic",
            distance_length=length,
            min_cutset=cut.witness,
            n=g.n,
        )
    return FragilityReport(SNF, g.n - 1, (), None, "graphic", distance_length=length, n=g.n)


def classify_brute_force(
    sys: MasSystem, tol: float | None = None, bound: int = NF_MAX_NODES
) -> FragilityReport:
    """Level of non-fragility for the given weights, by enumerating removals."""
    _require_controllable(sys, tol)
    _check_bound(sys, bound)
    per_p = []
    breaking: NodeSet = ()
    for p in range(1, sys.n):
        witness = _first_breaking(sys, p, tol)
        per_p.append(witness is None)
        if witness is not None and not breaking:
            breaking = witness
    k = next((i for i, ok in enumerate(per_p) if not ok), sys.n - 1)
    # a controllable system is connected, so the graphic side is always defined
    graphic = classify_graphic(sys.graph, sys.leader)
    return FragilityReport(
        label_for(k, sys.n),
        k,
        breaking,
        graphic.graphic_k,
        "brute-force",
        per_p=tuple(per_p),
        distance_length=graphic.distance_length,
        min_cutset=graphic.min_cutset,
        n=sys.n,
    )


def check_d1_necessary(g: WeightedGraph, leader: str, k: int) -> bool:
    """Necessary condition for k-WNF: at least k+1 followers neighbor the leader."""
    layers = distance_partition(g, leader).layers
    return (len(layers[1]) if len(layers) > 1 else 0) >= k + 1


def _all_subsets_controllable(sys: MasSystem, tol: float | None) -> NodeSet | None:
    for p in range(sys.n):
        for removed in combinations(sys.followers, p):
            sub = subsystem_after_removal(sys, removed)
            if controllability_rank(sub, tol) < sys.n - p:
                return removed
    return None


def synthesize_snf_weights(
    g: WeightedGraph,
    leader: str,
    tol: float | None = None,
    max_halvings: int = MAX_HALVINGS,
    bound: int = SNF_SYNTH_MAX_NODES,
) -> tuple[dict[tuple[str, str], float], float]:
    """Edge weights under which every follower-removal subsystem is controllable.

    Leader edges get the distinct weights 1, 2, ..., deg(leader) in neighbor
    order. Follower edges share a common weight M, starting at 1 and halved
    until all 2^(n-1) removal subsystems are controllable. Returns the weight
    map (unordered pairs) and the final M.
    """
    g.index(leader)
    if g.n > 1 and (not is_connected(g) or distance_partition(g, leader).length != 1):
        raise InputError("SNF requires every follower adjacent to the leader")
    if g.n > bound:
        raise InfeasibleError(f"SNF synthesis bound exceeded ({g.n} > {bound} nodes)")
    leader_w = {edge_key(leader, v): float(i + 1) for i, v in enumerate(g.neighbors(leader))}
    follower_edges = [edge_key(u, v) for u, v, _ in g.edges if leader not in (u, v)]
    M = 1.0
    failing: NodeSet = ()
    for _ in range(max_halvings + 1):
        weights = dict(leader_w)
        weights.update({e: M for e in follower_edges})
        sys = MasSystem(g.with_weights(weights), leader)
        failing = _all_subsets_controllable(sys, tol)
        if failing is None:
            return weights, M
        if not follower_edges:
            break
        M /= 2
    raise InfeasibleError(
        f"SNF synthesis did not converge after {max_halvings} halvings; removal {list(failing)} stays uncontrollable"
    )
