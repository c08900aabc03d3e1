"""Partial controllability of node groups.

Two independent decision routes are provided:

* ``check_group_rows``: the group's rows of the controllability matrix are
  linearly independent. Rows are read from an orthonormal basis of the
  matrix's column space (same row dependencies, far better conditioning).
* ``check_group_grammian``: the group's principal block of the Grammian is
  invertible. The block is handled through a square-root factor of the
  Grammian, so its singular values are never squared in floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Iterable

import numpy as np

from .config import DEFAULT_TOL, MAX_GROUP_SUBSETS
from .errors import InfeasibleError, InputError
from .graph import NodeSet
from .linalg import RankResult, grammian_factor, numerical_rank
from .system import MasSystem, input_vector, laplacian, reachable_basis


@dataclass(frozen=True)
class GroupVerdict:
    group: NodeSet
    partially_controllable: bool
    criterion: str  # "rows" or "grammian"
    tol: float
    row_rank: RankResult | None = None
    grammian_min_singular: float | None = None
    grammian_ratio: float | None = None
    horizon: tuple[float, float] | None = None

    @property
    def decision_ratio(self) -> float:
        if self.criterion == "rows":
            sv = self.row_rank.singular_values
            r = len(self.group)
            if len(sv) < r or sv[0] == 0:
                return 0.0
            return sv[r - 1] / sv[0]
        return self.grammian_ratio

    @property
    def in_guard_band(self) -> bool:
        """Decision ratio within a factor 10 of the tolerance."""
        return self.tol / 10 <= self.decision_ratio <= 10 * self.tol


def _group(sys: MasSystem, group: Iterable[str]) -> NodeSet:
    g = sys.graph.sort_nodes(group)
    if not g:
        raise InputError("node group must be nonempty")
    return g


def _rows_rank(basis: np.ndarray, idx: list[int], tol: float) -> RankResult:
    block = basis[idx, :]
    if block.shape[1] < len(idx):
        # fewer basis columns than rows: pad so the deficiency shows up as zeros
        block = np.hstack([block, np.zeros((len(idx), len(idx) - block.shape[1]))])
    return numerical_rank(block, tol)


def check_group_rows(sys: MasSystem, group: Iterable[str], tol: float | None = None) -> GroupVerdict:
    group = _group(sys, group)
    tol = DEFAULT_TOL.rows if tol is None else tol
    rr = _rows_rank(reachable_basis(sys), sys.rows(group), tol)
    return GroupVerdict(group, rr.rank == len(group), "rows", tol, row_rank=rr)


def check_group_grammian(
    sys: MasSystem,
    group: Iterable[str],
    t0: float = 0.0,
    t1: float = 1.0,
    tol: float | None = None,
) -> GroupVerdict:
    group = _group(sys, group)
    tol = DEFAULT_TOL.grammian if tol is None else tol
    F = grammian_factor(laplacian(sys), input_vector(sys), t0, t1)
    sv = np.linalg.svd(F[sys.rows(group), :], compute_uv=False)
    sv = np.concatenate([sv, np.zeros(len(group) - sv.size)])
    smin2, smax2 = float(sv[-1] ** 2), float(sv[0] ** 2)
    ratio = smin2 / smax2 if smax2 > 0 else 0.0
    return GroupVerdict(
        group,
        ratio > tol,
        "grammian",
        tol,
        grammian_min_singular=smin2,
        grammian_ratio=ratio,
        horizon=(float(t0), float(t1)),
    )


def maximal_group(sys: MasSystem, must_include: Iterable[str] = (), tol: float | None = None) -> NodeSet:
    """Grow ``must_include`` greedily in node order while rows stay independent."""
    tol = DEFAULT_TOL.rows if tol is None else tol
    seed = sys.graph.sort_nodes(must_include)
    basis = reachable_basis(sys)
    if seed and _rows_rank(basis, sys.rows(seed), tol).rank < len(seed):
        raise InputError("seed group is not partially controllable")
    chosen = list(seed)
    r = basis.shape[1]
    for v in sys.nodes:
        if len(chosen) == r:
            break
        if v in chosen:
            continue
        trial = sys.graph.sort_nodes(chosen + [v])
        if _rows_rank(basis, sys.rows(trial), tol).rank == len(trial):
            chosen.append(v)
    return sys.graph.sort_nodes(chosen)


def all_maximal_groups(
    sys: MasSystem, tol: float | None = None, bound: int = MAX_GROUP_SUBSETS
) -> list[NodeSet]:
    """Every rank(Q)-sized node set with independent rows, in lexicographic index order."""
    tol = DEFAULT_TOL.rows if tol is None else tol
    basis = reachable_basis(sys)
    r = basis.shape[1]
    total = comb(sys.n, r)
    if total > bound:
        raise InfeasibleError(
            f"{total} candidate groups exceed the enumeration bound {bound}; use maximal_group instead"
        )
    out = []
    for cand in combinations(range(sys.n), r):
        if _rows_rank(basis, list(cand), tol).rank == r:
            out.append(tuple(sys.nodes[i] for i in cand))
    return out
