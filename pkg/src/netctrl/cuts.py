"""Vertex cuts: cut vertices, follower cutsets and minimum <s,t> vertex cutsets.

The minimum <s,t> vertex cut is found by unit-capacity max-flow on the
vertex-split digraph (Menger). ``brute_force_min_cut`` solves the same
problem by subset enumeration and is kept as an oracle for tests.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

from .errors import InfeasibleError, InputError
from .graph import NodeSet, WeightedGraph, is_connected, num_components, remove_nodes, same_component

ORACLE_BOUND = 12
_INF = 1 << 30


@dataclass(frozen=True)
class CutReport:
    exists: bool
    size: int | None
    witness: NodeSet

    @classmethod
    def none(cls) -> "CutReport":
        return cls(False, None, ())


def _check_terminals(g: WeightedGraph, s: str, t: str, others: Iterable[str]) -> NodeSet:
    g.index(s)
    g.index(t)
    if s == t:
        raise InputError("s and t must be distinct")
    others = g.sort_nodes(others)
    if s in others or t in others:
        raise InputError("s and t may not belong to the vertex set")
    return others


def is_st_cutset(g: WeightedGraph, s: str, t: str, vset: Iterable[str]) -> bool:
    vset = _check_terminals(g, s, t, vset)
    return not same_component(remove_nodes(g, vset), s, t)


class _FlowNetwork:
    """Residual network with integer capacities, Edmonds-Karp augmentation."""

    def __init__(self, size: int):
        self.cap: list[dict[int, int]] = [dict() for _ in range(size)]

    def add_arc(self, a: int, b: int, c: int) -> None:
        self.cap[a][b] = self.cap[a].get(b, 0) + c
        self.cap[b].setdefault(a, 0)

    def _augmenting_path(self, s: int, t: int) -> list[int] | None:
        parent = {s: s}
        queue = deque([s])
        while queue:
            a = queue.popleft()
            for b, c in self.cap[a].items():
                if c > 0 and b not in parent:
                    parent[b] = a
                    if b == t:
                        path = [t]
                        while path[-1] != s:
                            path.append(parent[path[-1]])
                        return path[::-1]
                    queue.append(b)
        return None

    def max_flow(self, s: int, t: int, limit: int) -> int:
        flow = 0
        while flow < limit:
            path = self._augmenting_path(s, t)
            if path is None:
                break
            push = min(self.cap[a][b] for a, b in zip(path, path[1:]))
            for a, b in zip(path, path[1:]):
                self.cap[a][b] -= push
                self.cap[b][a] += push
            flow += push
        return flow

    def reachable(self, s: int) -> set[int]:
        seen = {s}
        queue = deque([s])
        while queue:
            a = queue.popleft()
            for b, c in self.cap[a].items():
                if c > 0 and b not in seen:
                    seen.add(b)
                    queue.append(b)
        return seen


def min_st_vertex_cut(
    g: WeightedGraph, s: str, t: str, forbidden: Iterable[str] = ()
) -> CutReport:
    """Smallest vertex set avoiding ``forbidden`` that separates s from t."""
    forbidden = set(_check_terminals(g, s, t, forbidden))
    if g.has_edge(s, t):
        return CutReport.none()
    n = g.n
    # node i -> in-copy 2i, out-copy 2i+1
    net = _FlowNetwork(2 * n)
    for i, v in enumerate(g.nodes):
        internal = _INF if (v in forbidden or v in (s, t)) else 1
        net.add_arc(2 * i, 2 * i + 1, internal)
    for u, v, _ in g.edges:
        i, j = g.index(u), g.index(v)
        net.add_arc(2 * i + 1, 2 * j, _INF)
        net.add_arc(2 * j + 1, 2 * i, _INF)
    src, snk = 2 * g.index(s) + 1, 2 * g.index(t)
    flow = net.max_flow(src, snk, limit=n + 1)
    if flow > n:
        return CutReport.none()
    side = net.reachable(src)
    witness = [v for i, v in enumerate(g.nodes) if 2 * i in side and 2 * i + 1 not in side]
    assert len(witness) == flow
    return CutReport(True, flow, g.sort_nodes(witness))


def brute_force_min_cut(
    g: WeightedGraph,
    s: str,
    t: str,
    forbidden: Iterable[str] = (),
    bound: int = ORACLE_BOUND,
) -> CutReport:
    """Same contract as :func:`min_st_vertex_cut`, by enumerating subsets by size."""
    forbidden = set(_check_terminals(g, s, t, forbidden))
    if g.n > bound:
        raise InfeasibleError(f"oracle bound exceeded ({g.n} > {bound} nodes)")
    if g.has_edge(s, t):
        return CutReport.none()
    pool = [v for v in g.nodes if v not in forbidden and v not in (s, t)]
    for k in range(len(pool) + 1):
        for cand in combinations(pool, k):
            if is_st_cutset(g, s, t, cand):
                return CutReport(True, k, cand)
    return CutReport.none()


def min_follower_cutset(g: WeightedGraph, leader: str) -> CutReport:
    """Smallest leader-free node set whose removal disconnects the graph."""
    g.index(leader)
    if not is_connected(g):
        raise InputError("minimal cutset defined for connected graphs")
    best = CutReport.none()
    nodes = g.nodes
    for a in range(len(nodes)):
        for b in range(a + 1, len(nodes)):
            s, t = nodes[a], nodes[b]
            if g.has_edge(s, t):
                continue
            forbidden = () if leader in (s, t) else (leader,)
            rep = min_st_vertex_cut(g, s, t, forbidden)
            if rep.exists and (not best.exists or rep.size < best.size):
                best = rep
    return best


def cut_vertices(g: WeightedGraph, excluding: Iterable[str] = ()) -> NodeSet:
    excluding = set(g.sort_nodes(excluding))
    base = num_components(g)
    return tuple(
        v for v in g.nodes if v not in excluding and num_components(remove_nodes(g, [v])) > base
    )
