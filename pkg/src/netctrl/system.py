"""Leader-follower model x' = -L x + b u on a weighted undirected graph."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .config import DEFAULT_TOL
from .errors import InputError
from .graph import NodeSet, WeightedGraph, remove_nodes
from .linalg import krylov_basis


@dataclass(frozen=True)
class MasSystem:
    graph: WeightedGraph
    leader: str

    def __post_init__(self):
        if self.leader not in self.graph:
            raise InputError(f"leader {self.leader!r} is not a node of the graph")

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def nodes(self) -> NodeSet:
        return self.graph.nodes

    @property
    def followers(self) -> NodeSet:
        return tuple(v for v in self.graph.nodes if v != self.leader)

    def rows(self, group: Iterable[str]) -> list[int]:
        return [self.graph.index(v) for v in self.graph.sort_nodes(group)]


@dataclass(frozen=True)
class ControllabilityMatrix:
    q: np.ndarray
    node_order: NodeSet


def laplacian(sys: MasSystem | WeightedGraph) -> np.ndarray:
    g = sys.graph if isinstance(sys, MasSystem) else sys
    L = np.zeros((g.n, g.n))
    for u, v, w in g.edges:
        i, j = g.index(u), g.index(v)
        L[i, j] = L[j, i] = -w
    # row sums are exactly zero: the diagonal is the negated sum of the row
    np.fill_diagonal(L, -L.sum(axis=1))
    return L


def input_vector(sys: MasSystem) -> np.ndarray:
    b = np.zeros(sys.n)
    b[sys.graph.index(sys.leader)] = 1.0
    return b


def controllability_matrix(sys: MasSystem) -> ControllabilityMatrix:
    """[b, -Lb, ..., (-L)^{n-1} b] by repeated matrix-vector products."""
    L = laplacian(sys)
    cols = [input_vector(sys)]
    for _ in range(sys.n - 1):
        cols.append(-L @ cols[-1])
    return ControllabilityMatrix(np.column_stack(cols), sys.nodes)


def reachable_basis(sys: MasSystem, tol: float | None = None) -> np.ndarray:
    """Orthonormal basis of the column space of the controllability matrix."""
    tol = DEFAULT_TOL.krylov if tol is None else tol
    return krylov_basis(-laplacian(sys), input_vector(sys), tol)


def controllability_rank(sys: MasSystem, tol: float | None = None) -> int:
    return reachable_basis(sys, tol).shape[1]


def is_controllable(sys: MasSystem, tol: float | None = None) -> bool:
    return controllability_rank(sys, tol) == sys.n


def subsystem_after_removal(sys: MasSystem, removed: Iterable[str]) -> MasSystem:
    """The survivors re-run the protocol on the remaining graph."""
    removed = sys.graph.sort_nodes(removed)
    if sys.leader in removed:
        raise InputError("the leader can not be removed")
    if not removed:
        return sys
    return MasSystem(remove_nodes(sys.graph, removed), sys.leader)
