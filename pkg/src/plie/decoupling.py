"""The decoupling diffeomorphisms m and F with their local inverses, and the
auxiliary (anti-)Poisson maps nu, xi, theta and iota.
"""

from __future__ import annotations

import numpy as np
from scipy.linalg import solve_triangular

from .errors import ConstraintViolated, DomainEscape
from .factorization import factor_inv_pair, g_pm
from .points import SPoint, SpinPoint, SpinTuple
from .tensors import eta

__all__ = [
    "guard_tuple",
    "map_m",
    "map_m_inverse",
    "map_F",
    "map_F_inverse",
    "map_nu",
    "map_xi",
    "map_theta",
    "iota",
]

_GUARD = 0.9


def guard_tuple(t: SpinTuple) -> None:
    """Require ||a|| * ||b|| < 0.9 per copy: keeps all G_j off the branch cut."""
    for i, s in enumerate(t):
        if np.linalg.norm(s.a) * np.linalg.norm(s.b) >= _GUARD:
            raise DomainEscape(f"copy {i + 1}: ||a||*||b|| >= {_GUARD}")


def _tri_inv(m: np.ndarray, lower: bool) -> np.ndarray:
    inv = solve_triangular(m, np.eye(m.shape[0]), lower=lower)
    if lower:
        inv[np.triu_indices_from(inv, 1)] = 0.0
    else:
        inv[np.tril_indices_from(inv, -1)] = 0.0
    return inv


def map_m(t: SpinTuple) -> SPoint:
    """Column-wise dressing: A^al = g_+(1)...g_+(al-1) a^al, B^al = b^al g_-(al-1)^-1...g_-(1)^-1."""
    guard_tuple(t)
    n, d = t.n, t.d
    A = np.empty((n, d), dtype=complex)
    B = np.empty((d, n), dtype=complex)
    hp = np.eye(n, dtype=complex)  # running g_+(1)...g_+(al-1)
    hm = np.eye(n, dtype=complex)  # running g_-(al-1)^-1...g_-(1)^-1
    for al, s in enumerate(t):
        A[:, al] = hp @ s.a
        B[al, :] = s.b @ hm
        if al < d - 1:
            pair = g_pm(s)
            hp = hp @ pair.hplus
            hm = _tri_inv(pair.hminus, lower=True) @ hm
    return SPoint(A, B)


def map_m_inverse(p: SPoint) -> SpinTuple:
    """Inductive inverse: recover copy al, refactor it, undress copy al+1."""
    n, d = p.n, p.d
    hp_inv = np.eye(n, dtype=complex)
    hm_inv = np.eye(n, dtype=complex)
    spins = []
    for al in range(d):
        s = SpinPoint(hp_inv @ p.A[:, al], p.B[al, :] @ hm_inv)
        spins.append(s)
        if al < d - 1:
            pair = g_pm(s)
            hp_inv = _tri_inv(pair.hplus, lower=False) @ hp_inv
            hm_inv = hm_inv @ pair.hminus
    return SpinTuple(spins)


def map_F(t: SpinTuple) -> SPoint:
    """Reverse dressing: A-hat^al = g_+(d)^-1...g_+(al)^-1 a^al, B-hat^al = b^al g_-(al)...g_-(d)."""
    guard_tuple(t)
    n, d = t.n, t.d
    A = np.empty((n, d), dtype=complex)
    B = np.empty((d, n), dtype=complex)
    left = np.eye(n, dtype=complex)  # g_+(d)^-1 ... g_+(al+1)^-1
    right = np.eye(n, dtype=complex)  # g_-(al+1) ... g_-(d)
    for al in range(d - 1, -1, -1):
        pair = g_pm(t[al])
        left = left @ _tri_inv(pair.hplus, lower=False)
        right = pair.hminus @ right
        A[:, al] = left @ t[al].a
        B[al, :] = t[al].b @ right
    return SPoint(A, B)


def map_F_inverse(p: SPoint) -> SpinTuple:
    """Iterative inverse of map_F via successive local factorizations.

    For al = d down to 1: factor 1 - P (A-hat^al B-hat^al) R = g_+^{-1} g_-
    with (P, R) the accumulated conjugators, then undress the copy.
    """
    n, d = p.n, p.d
    P = np.eye(n, dtype=complex)
    R = np.eye(n, dtype=complex)
    spins = [None] * d
    for al in range(d - 1, -1, -1):
        M = np.eye(n) - P @ np.outer(p.A[:, al], p.B[al, :]) @ R
        pair = factor_inv_pair(M)
        P = pair.hplus @ P
        R = R @ _tri_inv(pair.hminus, lower=True)
        spins[al] = SpinPoint(P @ p.A[:, al], p.B[al, :] @ R)
    return SpinTuple(spins)


def map_nu(p: SPoint) -> SPoint:
    """Swap map S(n,d) -> S(d,n): (A, B) -> (eta_d B eta_n, eta_n A eta_d)."""
    en, ed = eta(p.n), eta(p.d)
    return SPoint(ed @ p.B @ en, en @ p.A @ ed)


def map_xi(p: SPoint, xi_a: complex, xi_b: complex, kappa: complex) -> SPoint:
    """Rescaled anti-diagonal twist (xi_a A eta_d, xi_b eta_d B); needs xi_a xi_b = -1/kappa."""
    if abs(xi_a * xi_b + 1.0 / kappa) > 1e-12 * max(1.0, abs(1.0 / kappa)):
        raise ConstraintViolated(f"xi_a*xi_b = {xi_a * xi_b}, expected {-1.0 / kappa}")
    ed = eta(p.d)
    return SPoint(xi_a * (p.A @ ed), xi_b * (ed @ p.B))


def map_theta(p: SPoint, th_a: complex, th_b: complex, kappa: complex) -> SPoint:
    """Plain rescaling (th_a A, th_b B); needs th_a th_b = -1/kappa."""
    if abs(th_a * th_b + 1.0 / kappa) > 1e-12 * max(1.0, abs(1.0 / kappa)):
        raise ConstraintViolated(f"th_a*th_b = {th_a * th_b}, expected {-1.0 / kappa}")
    return SPoint(th_a * p.A, th_b * p.B)


def iota(t: SpinTuple) -> SpinTuple:
    """Per-copy swap (a, b) -> (b^T, a^T); an involution."""
    return SpinTuple(SpinPoint(s.b.copy(), s.a.copy()) for s in t)
