"""Steering a controllable node group to prescribed states at a fixed time.

The input is u(t) = -b^T exp(-L (t1 - t)) z with z supported on the group.
Then x(t1) = exp(-L T) x(t0) - W_c z, so solving the group block of that
identity for z hits the targets while the other agents move freely.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Mapping

import numpy as np

from .errors import InfeasibleError, InputError
from .graph import NodeSet
from .groups import check_group_grammian
from .linalg import expm_action, grammian, sym_eig
from .system import MasSystem, input_vector, laplacian


@dataclass(frozen=True)
class SteeringPlan:
    group: NodeSet
    t0: float
    t1: float
    x0: np.ndarray
    targets: np.ndarray  # aligned with group
    z: np.ndarray
    predicted_final: np.ndarray  # closed form exp(-L T) x0 - W_c z
    input_times: np.ndarray = field(default_factory=lambda: np.zeros(0))
    input_values: np.ndarray = field(default_factory=lambda: np.zeros(0))
    times: np.ndarray = field(default_factory=lambda: np.zeros(0))
    states: np.ndarray = field(default_factory=lambda: np.zeros((0, 0)))
    target_error: np.ndarray = field(default_factory=lambda: np.zeros(0))

    @property
    def simulated(self) -> bool:
        return self.states.size > 0

    @property
    def final_state(self) -> np.ndarray:
        return self.states[-1]


def input_signal(sys: MasSystem, plan: SteeringPlan, t) -> np.ndarray:
    """u(t) = -b^T exp(-L (t1 - t)) z, evaluated exactly at the given times."""
    lam, U = sym_eig(laplacian(sys))
    lead = U[sys.graph.index(sys.leader)]
    coeff = lead * (U.T @ plan.z)
    t = np.atleast_1d(np.asarray(t, dtype=float))
    return -(np.exp(-np.outer(plan.t1 - t, lam)) @ coeff)


def plan_steering(
    sys: MasSystem,
    group,
    x0=None,
    targets: Mapping[str, float] | None = None,
    t0: float = 0.0,
    t1: float = 1.0,
    tol: float | None = None,
) -> SteeringPlan:
    """Input that drives ``group`` to ``targets`` at t1 starting from ``x0`` at t0."""
    group = sys.graph.sort_nodes(group)
    if not group:
        raise InputError("steering group must be nonempty")
    targets = dict(targets or {})
    if set(targets) != set(group):
        extra = sorted(set(targets) - set(group))
        missing = sorted(set(group) - set(targets))
        raise InputError(f"targets must be keyed exactly by the group (extra {extra}, missing {missing})")
    x0 = np.zeros(sys.n) if x0 is None else np.asarray(x0, dtype=float)
    if x0.shape != (sys.n,):
        raise InputError(f"initial state must have length {sys.n}")
    verdict = check_group_grammian(sys, group, t0, t1, tol)
    if not verdict.partially_controllable:
        raise InfeasibleError(f"group {list(group)} is not partially controllable")
    L, b = laplacian(sys), input_vector(sys)
    T = t1 - t0
    idx = sys.rows(group)
    free = expm_action(-L, T, x0)
    W = grammian(L, b, t0, t1)
    xs = np.array([float(targets[v]) for v in group])
    try:
        zg = np.linalg.solve(W[np.ix_(idx, idx)], free[idx] - xs)
    except np.linalg.LinAlgError as exc:
        raise InfeasibleError(f"grammian block is singular: {exc}") from None
    z = np.zeros(sys.n)
    z[idx] = zg
    return SteeringPlan(group, float(t0), float(t1), x0, xs, z, free - W @ z)


def simulate(sys: MasSystem, plan: SteeringPlan, steps: int = 10_000) -> SteeringPlan:
    """Integrate x' = -L x + b u(t) with classical RK4 on a uniform grid."""
    if steps < 10:
        raise InputError("simulation needs at least 10 steps")
    L, b = laplacian(sys), input_vector(sys)
    h = (plan.t1 - plan.t0) / steps
    half_grid = plan.t0 + 0.5 * h * np.arange(2 * steps + 1)
    u = input_signal(sys, plan, half_grid)
    A = -L
    x = plan.x0.astype(float).copy()
    states = np.empty((steps + 1, sys.n))
    states[0] = x
    for k in range(steps):
        u0, um, u1 = u[2 * k], u[2 * k + 1], u[2 * k + 2]
        k1 = A @ x + b * u0
        k2 = A @ (x + 0.5 * h * k1) + b * um
        k3 = A @ (x + 0.5 * h * k2) + b * um
        k4 = A @ (x + h * k3) + b * u1
        x = x + (h / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
        states[k + 1] = x
    err = np.abs(x[sys.rows(plan.group)] - plan.targets)
    return replace(
        plan,
        input_times=half_grid[::2],
        input_values=u[::2],
        times=half_grid[::2].copy(),
        states=states,
        target_error=err,
    )


def write_trajectory_csv(sys: MasSystem, plan: SteeringPlan, path: str | Path) -> None:
    """CSV with columns time, then one column per agent in node order."""
    if not plan.simulated:
        raise InputError("plan has no trajectory; run simulate first")
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["time", *sys.nodes])
        for t, row in zip(plan.times, plan.states):
            w.writerow([f"{t:.12g}", *(f"{x:.12g}" for x in row)])
