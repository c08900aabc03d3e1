"""Weighted undirected graphs and the structural operations used throughout.

Nodes are identified by string labels. A graph keeps its nodes in a fixed
order (the dense index 0..n-1); every operation that returns a node set
returns a tuple sorted by that order, so results are reproducible.
Graphs are immutable: all operations build new graphs.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Mapping

from .errors import InputError

NodeSet = tuple[str, ...]


def edge_key(u: str, v: str) -> tuple[str, str]:
    return (u, v) if u <= v else (v, u)


class WeightedGraph:
    """Undirected graph with strictly positive edge weights."""

    __slots__ = ("_nodes", "_index", "_adj")

    def __init__(self, nodes: Iterable[str], edges: Iterable[tuple[str, str, float]] = ()):
        nodes = tuple(str(v) for v in nodes)
        index: dict[str, int] = {}
        for i, v in enumerate(nodes):
            if v in index:
                raise InputError(f"duplicate node label {v!r}")
            index[v] = i
        adj: list[dict[str, float]] = [{} for _ in nodes]
        for u, v, w in edges:
            u, v = str(u), str(v)
            for x in (u, v):
                if x not in index:
                    raise InputError(f"node not in graph: {x!r}")
            if u == v:
                raise InputError(f"self-loop on {u!r} is not allowed")
            w = float(w)
            if not w > 0 or w == float("inf"):
                raise InputError(f"edge weight must be positive and finite: ({u}, {v}, {w})")
            if v in adj[index[u]]:
                raise InputError(f"duplicate edge ({u}, {v})")
            adj[index[u]][v] = w
            adj[index[v]][u] = w
        self._nodes = nodes
        self._index = index
        self._adj = tuple(adj)

    # -- basic accessors -------------------------------------------------

    @property
    def nodes(self) -> NodeSet:
        return self._nodes

    @property
    def n(self) -> int:
        return len(self._nodes)

    def __len__(self) -> int:
        return len(self._nodes)

    def __contains__(self, label: object) -> bool:
        return label in self._index

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise InputError(f"node not in graph: {label!r}") from None

    def neighbors(self, label: str) -> NodeSet:
        nbrs = self._adj[self.index(label)]
        return tuple(sorted(nbrs, key=self._index.__getitem__))

    def weight(self, u: str, v: str) -> float:
        """Edge weight, 0.0 when u and v are not adjacent."""
        return self._adj[self.index(u)].get(v, 0.0)

    def has_edge(self, u: str, v: str) -> bool:
        return v in self._adj[self.index(u)]

    def degree(self, label: str) -> int:
        return len(self._adj[self.index(label)])

    @property
    def edges(self) -> list[tuple[str, str, float]]:
        """Each undirected edge once, as (u, v, w) with index(u) < index(v)."""
        out = []
        for i, u in enumerate(self._nodes):
            for v in self.neighbors(u):
                if self._index[v] > i:
                    out.append((u, v, self._adj[i][v]))
        return out

    @property
    def num_edges(self) -> int:
        return sum(len(a) for a in self._adj) // 2

    def weights(self) -> dict[tuple[str, str], float]:
        return {edge_key(u, v): w for u, v, w in self.edges}

    def sort_nodes(self, labels: Iterable[str]) -> NodeSet:
        """Deduplicate and order labels by graph index, checking membership."""
        labels = set(labels)
        for v in labels:
            self.index(v)
        return tuple(sorted(labels, key=self._index.__getitem__))

    def with_weights(self, weights: Mapping[tuple[str, str], float]) -> "WeightedGraph":
        """Same topology, selected edge weights replaced. Keys are unordered pairs."""
        lookup = {edge_key(u, v): w for (u, v), w in weights.items()}
        for u, v in lookup:
            if not self.has_edge(u, v):
                raise InputError(f"no edge ({u}, {v}) to reweight")
        return WeightedGraph(
            self._nodes, [(u, v, lookup.get(edge_key(u, v), w)) for u, v, w in self.edges]
        )

    # -- equality is by labels and weights, not by index ----------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, WeightedGraph):
            return NotImplemented
        return set(self._nodes) == set(other._nodes) and self.weights() == other.weights()

    def __hash__(self) -> int:
        return hash((frozenset(self._nodes), frozenset(self.weights().items())))

    def __repr__(self) -> str:
        return f"WeightedGraph(n={self.n}, m={self.num_edges})"


# -- construction helpers ------------------------------------------------


def from_edges(edges: Iterable[tuple], nodes: Iterable[str] | None = None) -> WeightedGraph:
    """Build a graph from (u, v) or (u, v, w) tuples; unit weight when omitted.

    Without an explicit node list, nodes appear in first-mention order.
    """
    triples = [(e[0], e[1], e[2] if len(e) > 2 else 1.0) for e in edges]
    if nodes is None:
        seen: dict[str, None] = {}
        for u, v, _ in triples:
            seen.setdefault(str(u))
            seen.setdefault(str(v))
        nodes = list(seen)
    return WeightedGraph(nodes, triples)


def path_graph(n: int, prefix: str = "v") -> WeightedGraph:
    labels = [f"{prefix}{i + 1}" for i in range(n)]
    return WeightedGraph(labels, [(labels[i], labels[i + 1], 1.0) for i in range(n - 1)])


def cycle_graph(n: int, prefix: str = "v") -> WeightedGraph:
    labels = [f"{prefix}{i + 1}" for i in range(n)]
    return WeightedGraph(labels, [(labels[i], labels[(i + 1) % n], 1.0) for i in range(n)])


def star_graph(leaves: int, prefix: str = "v", weights: Iterable[float] | None = None) -> WeightedGraph:
    labels = [f"{prefix}{i + 1}" for i in range(leaves + 1)]
    ws = list(weights) if weights is not None else [1.0] * leaves
    return WeightedGraph(labels, [(labels[0], labels[i + 1], ws[i]) for i in range(leaves)])


def complete_graph(n: int, prefix: str = "v") -> WeightedGraph:
    labels = [f"{prefix}{i + 1}" for i in range(n)]
    return WeightedGraph(
        labels, [(labels[i], labels[j], 1.0) for i in range(n) for j in range(i + 1, n)]
    )


# -- structural operations -----------------------------------------------


def _bfs(g: WeightedGraph, root: str, blocked: frozenset = frozenset()) -> dict[str, int]:
    dist = {root: 0}
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for v in g.neighbors(u):
            if v not in dist and v not in blocked:
                dist[v] = dist[u] + 1
                queue.append(v)
    return dist


def connected_components(g: WeightedGraph) -> list[NodeSet]:
    """Maximal connected node sets, ordered by their smallest index."""
    seen: set[str] = set()
    comps = []
    for v in g.nodes:
        if v in seen:
            continue
        comp = _bfs(g, v)
        seen.update(comp)
        comps.append(g.sort_nodes(comp))
    return comps


def num_components(g: WeightedGraph) -> int:
    return len(connected_components(g))


def is_connected(g: WeightedGraph) -> bool:
    return num_components(g) == 1


def same_component(g: WeightedGraph, a: str, b: str) -> bool:
    return b in _bfs(g, a)


def remove_nodes(g: WeightedGraph, s: Iterable[str]) -> WeightedGraph:
    drop = set(g.sort_nodes(s))
    keep = [v for v in g.nodes if v not in drop]
    return WeightedGraph(keep, [(u, v, w) for u, v, w in g.edges if u not in drop and v not in drop])


def induced_subgraph(g: WeightedGraph, keep: Iterable[str]) -> WeightedGraph:
    keep = set(g.sort_nodes(keep))
    return remove_nodes(g, [v for v in g.nodes if v not in keep])


@dataclass(frozen=True)
class DistancePartition:
    root: str
    layers: tuple[NodeSet, ...]

    @property
    def length(self) -> int:
        return len(self.layers) - 1

    def layer_of(self, label: str) -> int:
        for i, layer in enumerate(self.layers):
            if label in layer:
                return i
        raise InputError(f"node not in graph: {label!r}")


def distance_partition(g: WeightedGraph, root: str) -> DistancePartition:
    g.index(root)
    if not is_connected(g):
        raise InputError("distance partition requires connected graph")
    dist = _bfs(g, root)
    layers: list[list[str]] = [[] for _ in range(max(dist.values()) + 1)]
    for v in g.nodes:
        layers[dist[v]].append(v)
    return DistancePartition(root, tuple(tuple(layer) for layer in layers))


def _fresh_label(g: WeightedGraph, base: str, taken: set[str], absorbed: NodeSet) -> str:
    # labels of absorbed nodes may be reused for the compressed node
    label = base
    while (label in g and label not in absorbed) or label in taken:
        label += "'"
    return label


def _compress_into(g: WeightedGraph, groups: list[NodeSet], names: list[str]) -> WeightedGraph:
    absorbed = {v: names[k] for k, grp in enumerate(groups) for v in grp}
    keep = [v for v in g.nodes if v not in absorbed]
    edges: dict[tuple[str, str], float] = {}
    for u, v, _ in g.edges:
        a, b = absorbed.get(u, u), absorbed.get(v, v)
        if a == b:
            continue
        edges[edge_key(a, b)] = 1.0
    return WeightedGraph(keep + names, [(a, b, w) for (a, b), w in edges.items()])


def compress(g: WeightedGraph, vq: Iterable[str], name: str = "q") -> tuple[WeightedGraph, str]:
    """Merge a connected node set into one fresh node.

    The new node is adjacent to every surviving node that neighbored some
    member of ``vq``. All edges of the result carry weight 1: the compressed
    graph only serves connectivity questions.
    """
    vq = g.sort_nodes(vq)
    if not vq:
        raise InputError("compression set must be nonempty")
    if not is_connected(induced_subgraph(g, vq)):
        raise InputError("compression set must induce a connected subgraph")
    q = _fresh_label(g, name, set(), vq)
    out = _compress_into(g, [vq], [q])
    return out, q


def compress_components(
    g: WeightedGraph, vq: Iterable[str], prefix: str = "q"
) -> tuple[WeightedGraph, list[tuple[NodeSet, str]]]:
    """Compress each connected component of the subgraph induced by ``vq``.

    Returns the shared compressed graph and, per component in index order,
    the pair (component members, compressed node label).
    """
    vq = g.sort_nodes(vq)
    if not vq:
        raise InputError("compression set must be nonempty")
    comps = connected_components(induced_subgraph(g, vq))
    taken: set[str] = set()
    names = []
    for k in range(len(comps)):
        base = prefix if len(comps) == 1 else f"{prefix}{k + 1}"
        label = _fresh_label(g, base, taken, comps[k])
        taken.add(label)
        names.append(label)
    return _compress_into(g, comps, names), list(zip(comps, names))
