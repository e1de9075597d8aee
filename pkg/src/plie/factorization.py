"""Triangular factorizations: Gauss decomposition, the 2-to-the-n local
square-root factorization chi^{-1}, and the closed-form spin factorization
(g_+, g_-) with its ordered products.
"""

from __future__ import annotations

import numpy as np
from scipy.linalg import solve_triangular

from .errors import BranchCut, SingularMinor, ZeroG
from .points import DualPair, SPoint, SpinPoint, SpinTuple
from .tensors import as_cmat

__all__ = [
    "gauss",
    "chi",
    "chi_inverse_local",
    "factor_inv_pair",
    "g_functions",
    "g_pm",
    "gamma",
    "gamma_pm",
    "calG_pm",
]

_MINOR_RTOL = 1e-12
_CUT_RTOL = 1e-13


def _principal_sqrt(values: np.ndarray, offset: int = 0) -> np.ndarray:
    """Principal square roots; negative reals raise BranchCut (1-based index)."""
    out = np.empty(values.shape, dtype=complex)
    for j, v in enumerate(values):
        if v.real < 0 and abs(v.imag) <= _CUT_RTOL * abs(v):
            raise BranchCut(offset + j + 1, v)
        out[j] = np.sqrt(v)
    return out


def gauss(g: np.ndarray):
    """Factor g = g_gt * g_0 * g_lt (unit upper, diagonal, unit lower).

    Elimination proceeds from the bottom-right corner; the pivots are ratios
    of trailing principal minors.  SingularMinor(k) reports a vanishing
    trailing k x k minor.  Triangular factors carry exact zeros off their
    triangles.
    """
    g = as_cmat(g)
    ell = g.shape[0]
    if ell != g.shape[1]:
        raise ValueError("matrix must be square")
    scale = max(1.0, float(np.max(np.abs(g))))

    # LDU of the anti-transposed matrix = UDL of g.
    m = g[::-1, ::-1].copy()
    lower = np.eye(ell, dtype=complex)
    for k in range(ell - 1):
        piv = m[k, k]
        if abs(piv) <= _MINOR_RTOL * scale:
            raise SingularMinor(k + 1, piv)
        f = m[k + 1 :, k] / piv
        lower[k + 1 :, k] = f
        m[k + 1 :, k:] -= np.outer(f, m[k, k:])
        m[k + 1 :, k] = 0.0
    if abs(m[ell - 1, ell - 1]) <= _MINOR_RTOL * scale:
        raise SingularMinor(ell, m[ell - 1, ell - 1])

    diag = np.diag(m).copy()
    upper = m / diag[:, None]
    np.fill_diagonal(upper, 1.0)

    g_gt = lower[::-1, ::-1]  # unit upper triangular
    g_0 = np.zeros((ell, ell), dtype=complex)
    np.fill_diagonal(g_0, diag[::-1])
    g_lt = upper[::-1, ::-1]  # unit lower triangular
    return g_gt, g_0, g_lt


def chi(pair: DualPair) -> np.ndarray:
    """The product h_+ h_-^{-1}."""
    hm = pair.hminus
    if np.any(np.diag(hm) == 0):
        raise ValueError("h_- is singular")
    return solve_triangular(hm.T, pair.hplus.T, lower=False).T


def chi_inverse_local(h: np.ndarray) -> DualPair:
    """The factorization branch of h = h_+ h_-^{-1} continuous at h = I.

    Uses the Gauss decomposition and the principal square root of each
    diagonal entry; BranchCut(j) is raised when that entry is a negative
    real number.
    """
    g_gt, g_0, g_lt = gauss(h)
    h0 = _principal_sqrt(np.diag(g_0))
    hplus = g_gt * h0[None, :]
    hminus = solve_triangular(g_lt, np.eye(g_lt.shape[0]), lower=True, unit_diagonal=True)
    hminus = hminus / h0[None, :]
    hplus[np.tril_indices_from(hplus, -1)] = 0.0
    hminus[np.triu_indices_from(hminus, 1)] = 0.0
    return DualPair(hplus, hminus)


def factor_inv_pair(m: np.ndarray) -> DualPair:
    """Factor m = g_+^{-1} g_- with (g_+, g_-) a DualPair, branch at m = I."""
    inner = chi_inverse_local(m)
    ell = inner.ell
    eye = np.eye(ell)
    gp = solve_triangular(inner.hplus, eye, lower=False)
    gm = solve_triangular(inner.hminus, eye, lower=True)
    gp[np.tril_indices_from(gp, -1)] = 0.0
    gm[np.triu_indices_from(gm, 1)] = 0.0
    return DualPair(gp, gm)


def g_functions(p: SpinPoint) -> np.ndarray:
    """Partial sums G_j = 1 + sum_{k>=j} a_k b_k, indices 0..n+1, G_0 = G_{n+1} = 1."""
    ab = p.a * p.b
    G = np.ones(p.n + 2, dtype=complex)
    G[1 : p.n + 1] += np.cumsum(ab[::-1])[::-1]
    return G


def g_pm(p: SpinPoint) -> DualPair:
    """Closed-form factorization of 1 + a b into an upper/lower pair.

    Entries (1-based): (g_+)_jj = s_j/s_{j+1}, (g_+)_jk = a_j b_k/(s_k s_{k+1})
    for j < k, and (g_-^{-1})_jj = s_j/s_{j+1}, (g_-^{-1})_jk = a_j b_k/(s_j s_{j+1})
    for j > k, with a single consistent root s_j = sqrt(G_j) per index.
    """
    n = p.n
    G = g_functions(p)
    scale = max(1.0, float(np.max(np.abs(G))))
    for j in range(1, n + 1):
        if abs(G[j]) <= 1e-12 * scale:
            raise ZeroG(j, G[j])
    s = _principal_sqrt(G[1 : n + 2])  # s[j-1] = sqrt(G_j), j = 1..n+1

    gp = np.zeros((n, n), dtype=complex)
    gm_inv = np.zeros((n, n), dtype=complex)
    dd = s[:n] / s[1 : n + 1]
    np.fill_diagonal(gp, dd)
    np.fill_diagonal(gm_inv, dd)
    off = np.outer(p.a, p.b)
    for j in range(n):
        for k in range(j + 1, n):
            gp[j, k] = off[j, k] / (s[k] * s[k + 1])
        for k in range(j):
            gm_inv[j, k] = off[j, k] / (s[j] * s[j + 1])

    gm = solve_triangular(gm_inv, np.eye(n), lower=True)
    gm[np.triu_indices_from(gm, 1)] = 0.0
    return DualPair(gp, gm)


def gamma(point: SPoint) -> np.ndarray:
    """The quadratic matrix 1 + A B."""
    return np.eye(point.n, dtype=complex) + point.A @ point.B


def gamma_pm(point: SPoint) -> DualPair:
    """Local triangular factorization of 1 + A B, branch with value (I, I) at zero."""
    return chi_inverse_local(gamma(point))


def calG_pm(t: SpinTuple) -> DualPair:
    """Ordered products of the per-copy factors: (g_+(1)...g_+(d), g_-(1)...g_-(d))."""
    pairs = [g_pm(s) for s in t]
    Gp = pairs[0].hplus
    Gm = pairs[0].hminus
    for pr in pairs[1:]:
        Gp = Gp @ pr.hplus
        Gm = Gm @ pr.hminus
    Gp[np.tril_indices_from(Gp, -1)] = 0.0
    Gm[np.triu_indices_from(Gm, 1)] = 0.0
    return DualPair(Gp, Gm)
