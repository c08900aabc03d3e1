"""Dense symmetric kernels behind the controllability tests.

Matrices here are small (tens of rows) and symmetric, so everything is done
through ``numpy.linalg.eigh`` and ``svd``. The quadrature Grammian exists only
as an independent check of the spectral closed form; it propagates with
``scipy.linalg.expm`` instead of the eigendecomposition.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import InputError

_EPS = np.finfo(float).eps


@dataclass(frozen=True)
class RankResult:
    rank: int
    singular_values: tuple[float, ...]
    tolerance_used: float

    @property
    def ratio(self) -> float:
        """Smallest over largest singular value (0 for an empty or zero matrix)."""
        sv = self.singular_values
        if not sv or sv[0] == 0:
            return 0.0
        return sv[-1] / sv[0]


def as_matrix(m) -> np.ndarray:
    a = np.array(m, dtype=float)
    if a.ndim == 1:
        a = a.reshape(1, -1) if a.size else a.reshape(0, 0)
    if a.ndim != 2:
        raise InputError("expected a 2-d matrix")
    if not np.all(np.isfinite(a)):
        raise InputError("matrix entries must be finite")
    return a


def check_symmetric(m) -> np.ndarray:
    a = as_matrix(m)
    if a.shape[0] != a.shape[1]:
        raise InputError(f"matrix must be square, got {a.shape}")
    scale = np.abs(a).max(initial=0.0)
    if np.abs(a - a.T).max(initial=0.0) > 1e-12 * max(scale, 1e-300):
        raise InputError("matrix must be symmetric")
    return a


def sym_eig(m) -> tuple[np.ndarray, np.ndarray]:
    """Ascending eigenvalues and orthonormal eigenvectors (as columns)."""
    a = check_symmetric(m)
    return np.linalg.eigh(0.5 * (a + a.T))


def numerical_rank(m, tol: float | None = None) -> RankResult:
    """SVD rank. ``tol`` is relative to the largest singular value.

    The default is the usual max(rows, cols) * eps heuristic.
    """
    a = as_matrix(m)
    if a.size == 0:
        return RankResult(0, (), 0.0)
    sv = np.linalg.svd(a, compute_uv=False)
    smax = float(sv[0]) if sv.size else 0.0
    rel = max(a.shape) * _EPS if tol is None else tol
    cutoff = rel * smax if smax > 0 else rel
    rank = int(np.sum(sv > cutoff)) if smax > 0 else 0
    return RankResult(rank, tuple(float(s) for s in sv), cutoff)


def expm_action(m, t: float, v) -> np.ndarray:
    """exp(m t) v for symmetric m."""
    lam, U = sym_eig(m)
    v = np.asarray(v, dtype=float)
    return U @ (np.exp(lam * t)[:, None] * (U.T @ v.reshape(len(lam), -1))).reshape(v.shape)


def _phi(mu: np.ndarray, T: float) -> np.ndarray:
    # (1 - exp(-mu T)) / mu, continuous at mu = 0
    out = np.full(mu.shape, float(T))
    nz = np.abs(mu * T) > 1e-14
    out[nz] = -np.expm1(-mu[nz] * T) / mu[nz]
    return out


def _check_horizon(t0: float, t1: float) -> float:
    if not t1 > t0:
        raise InputError(f"horizon requires t1 > t0 (got t0={t0}, t1={t1})")
    return float(t1 - t0)


def grammian(L, b, t0: float, t1: float) -> np.ndarray:
    """Controllability Grammian of x' = -L x + b u over [t0, t1], closed form."""
    T = _check_horizon(t0, t1)
    lam, U = sym_eig(L)
    c = U.T @ np.asarray(b, dtype=float)
    M = np.outer(c, c) * _phi(lam[:, None] + lam[None, :], T)
    W = U @ M @ U.T
    return 0.5 * (W + W.T)


def quadrature_grammian(L, b, t0: float, t1: float, steps: int = 100_000) -> np.ndarray:
    """Composite trapezoid on exp(-L s) b b^T exp(-L s), s = t1 - t in [0, T]."""
    T = _check_horizon(t0, t1)
    L = check_symmetric(L)
    if steps < 1:
        raise InputError("steps must be positive")
    n = L.shape[0]
    h = T / steps
    step = scipy.linalg.expm(-L * h)
    block = min(steps + 1, 1024)
    # columns exp(-L k h) b for k = 0..block-1
    cols = np.empty((n, block))
    cols[:, 0] = np.asarray(b, dtype=float)
    for k in range(1, block):
        cols[:, k] = step @ cols[:, k - 1]
    jump = scipy.linalg.expm(-L * h * block)
    W = np.zeros((n, n))
    k0 = 0
    while k0 <= steps:
        m = min(block, steps + 1 - k0)
        w = np.full(m, h)
        if k0 == 0:
            w[0] = h / 2
        if k0 + m - 1 == steps:
            w[m - 1] = h / 2
        C = cols[:, :m]
        W += (C * w) @ C.T
        k0 += block
        cols = jump @ cols
    return 0.5 * (W + W.T)


def grammian_factor(L, b, t0: float, t1: float, nodes_per_panel: int = 16) -> np.ndarray:
    """F with F F^T = W_c(t0, t1), by composite Gauss-Legendre quadrature.

    The columns are sqrt(w_k) exp(-L s_k) b. Singular values of a row block of
    F are the square roots of those of the matching principal block of W_c, so
    rank decisions on the Grammian can be made without squaring its condition
    number.
    """
    T = _check_horizon(t0, t1)
    lam, U = sym_eig(L)
    c = U.T @ np.asarray(b, dtype=float)
    rate = 2.0 * max(float(np.abs(lam).max(initial=0.0)), 1e-12)
    panels = max(1, int(np.ceil(rate * T / 4.0)))
    x, w = np.polynomial.legendre.leggauss(nodes_per_panel)
    edges = np.linspace(0.0, T, panels + 1)
    half = np.diff(edges) / 2
    mid = (edges[:-1] + edges[1:]) / 2
    s = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    wt = (half[:, None] * w[None, :]).ravel()
    E = np.exp(-np.outer(lam, s))
    return U @ (c[:, None] * E * np.sqrt(wt)[None, :])


def krylov_basis(A, b, tol: float = 1e-10) -> np.ndarray:
    """Orthonormal basis of span{b, A b, A^2 b, ...} by Arnoldi.

    Each new direction is orthogonalized twice against the basis; the
    iteration stops when its residual norm falls below ``tol`` times the
    infinity norm of A. The column count is the numerical rank of the
    Krylov matrix [b, A b, ..., A^{n-1} b], and selected rows of the basis
    are dependent exactly when the same rows of the Krylov matrix are.
    """
    A = as_matrix(A)
    n = A.shape[0]
    b = np.asarray(b, dtype=float)
    nb = np.linalg.norm(b)
    if n == 0 or nb == 0:
        return np.zeros((n, 0))
    scale = np.abs(A).sum(axis=1).max()
    if scale == 0:
        scale = 1.0
    V = [b / nb]
    for _ in range(n - 1):
        w = A @ V[-1]
        for _ in range(2):
            for v in V:
                w = w - (v @ w) * v
        h = np.linalg.norm(w)
        if h <= tol * scale:
            break
        V.append(w / h)
    return np.column_stack(V)
