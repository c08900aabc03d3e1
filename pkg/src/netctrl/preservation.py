"""Keeping an important node group partially controllable when followers are lost.

Structurally, a removal set preserves the group exactly when every member
still reaches the leader. Equivalently, after compressing each connected
component of the group into a single node, the removal set is not an
<leader, q_i> vertex cutset for any compressed node q_i. The smallest
removal that breaks the group is then a minimum vertex cut on the
compressed graph.

Structural preservation is necessary for the numeric (fixed-weight) row
test but not sufficient; ``synthesize_preserving_weights`` finds weights
that make the numeric test pass for a list of removal scenarios.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from .config import MAX_HALVINGS
from .cuts import CutReport, is_st_cutset, min_st_vertex_cut
from .errors import InfeasibleError, InputError
from .graph import NodeSet, compress_components, edge_key, remove_nodes, same_component
from .groups import GroupVerdict, check_group_rows
from .system import MasSystem, subsystem_after_removal

EXHAUSTIVE_MAX_NODES = 12


@dataclass(frozen=True)
class PreservationVerdict:
    important: NodeSet
    removed: NodeSet
    structurally_preserved: bool
    violated_targets: NodeSet
    compressed_preserved: bool
    min_break_size: int | None
    min_break_witness: NodeSet


def _validate(sys: MasSystem, vq: Iterable[str], vprime: Iterable[str]) -> tuple[NodeSet, NodeSet]:
    vq = sys.graph.sort_nodes(vq)
    vprime = sys.graph.sort_nodes(vprime)
    if not vq:
        raise InputError("important node set must be nonempty")
    if set(vq) & set(vprime):
        raise InputError("important and removed node sets must be disjoint")
    if sys.leader in vq or sys.leader in vprime:
        raise InputError("the leader may not be important or removed")
    return vq, vprime


def min_breaking_set(sys: MasSystem, vq: Iterable[str]) -> CutReport:
    """Smallest follower set, disjoint from ``vq``, separating some member from the leader."""
    vq = sys.graph.sort_nodes(vq)
    if sys.leader in vq:
        raise InputError("the leader may not be important")
    cg, parts = compress_components(sys.graph, vq)
    qs = [q for _, q in parts]
    best = CutReport.none()
    for q in qs:
        # other compressed nodes stand for important agents and may not be cut
        rep = min_st_vertex_cut(cg, sys.leader, q, forbidden=[x for x in qs if x != q])
        if rep.exists and (not best.exists or rep.size < best.size):
            best = rep
    return best


def check_preservation_structural(
    sys: MasSystem, vq: Iterable[str], vprime: Iterable[str]
) -> PreservationVerdict:
    vq, vprime = _validate(sys, vq, vprime)
    rest = remove_nodes(sys.graph, vprime)
    violated = tuple(v for v in vq if not same_component(rest, sys.leader, v))
    cg, parts = compress_components(sys.graph, vq)
    compressed_ok = not any(is_st_cutset(cg, sys.leader, q, vprime) for _, q in parts)
    brk = min_breaking_set(sys, vq)
    return PreservationVerdict(
        vq, vprime, not violated, violated, compressed_ok, brk.size, brk.witness
    )


def check_preservation_numeric(
    sys: MasSystem, vq: Iterable[str], vprime: Iterable[str], tol: float | None = None
) -> GroupVerdict:
    """Row test for ``vq`` in the subsystem left after removing ``vprime``, at the given weights."""
    vq, vprime = _validate(sys, vq, vprime)
    return check_group_rows(subsystem_after_removal(sys, vprime), vq, tol)


def preserving_scenarios(sys: MasSystem, vq: Iterable[str]) -> list[NodeSet]:
    """Every follower set outside ``vq`` whose removal keeps ``vq`` structurally preserved."""
    vq = sys.graph.sort_nodes(vq)
    if sys.n > EXHAUSTIVE_MAX_NODES:
        raise InfeasibleError(f"exhaustive scenario mode is limited to {EXHAUSTIVE_MAX_NODES} nodes")
    pool = [v for v in sys.followers if v not in vq]
    out = []
    for k in range(len(pool) + 1):
        for cand in combinations(pool, k):
            rest = remove_nodes(sys.graph, cand)
            if all(same_component(rest, sys.leader, v) for v in vq):
                out.append(cand)
    return out


def synthesize_preserving_weights(
    sys: MasSystem,
    vq: Iterable[str],
    scenarios: Sequence[Iterable[str]] | None = None,
    tol: float | None = None,
    seed: int = 42,
    max_halvings: int = MAX_HALVINGS,
) -> dict[tuple[str, str], float]:
    """Reweight edges touching ``vq`` so it stays partially controllable in every scenario.

    Weights between non-important nodes are kept. Edges inside ``vq`` and on
    its boundary get generic random weights (uniform on [0.5, 1.5], seeded);
    boundary weights are then halved jointly until the row test passes for
    the empty removal and for every scenario. ``scenarios=None`` means all
    structurally preserving removals (small graphs only).
    """
    vq = sys.graph.sort_nodes(vq)
    if scenarios is None:
        scenarios = preserving_scenarios(sys, vq)
    cases = [()] + [sys.graph.sort_nodes(s) for s in scenarios]
    for s in cases:
        verdict = check_preservation_structural(sys, vq, s)
        if not verdict.structurally_preserved:
            raise InputError(
                f"scenario {list(s)} separates {list(verdict.violated_targets)} from the leader"
            )
    rng = np.random.default_rng(seed)
    inside, boundary = {}, {}
    members = set(vq)
    for u, v, _ in sys.graph.edges:
        a, b = u in members, v in members
        if a and b:
            inside[edge_key(u, v)] = float(rng.uniform(0.5, 1.5))
        elif a or b:
            boundary[edge_key(u, v)] = float(rng.uniform(0.5, 1.5))
    scale = 1.0
    failing: NodeSet = ()
    for _ in range(max_halvings + 1):
        weights = sys.graph.weights()
        weights.update(inside)
        weights.update({e: w * scale for e, w in boundary.items()})
        trial = MasSystem(sys.graph.with_weights(weights), sys.leader)
        failing = next(
            (s for s in cases if not check_preservation_numeric(trial, vq, s, tol).partially_controllable),
            None,
        )
        if failing is None:
            return weights
        if not boundary:
            break
        scale /= 2
    raise InfeasibleError(
        f"preserving-weight synthesis did not converge after {max_halvings} halvings; "
        f"scenario {list(failing)} still fails"
    )
