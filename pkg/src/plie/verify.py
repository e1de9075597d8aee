"""Residual computations for every identity the library asserts: Jacobi,
Poisson/anti-Poisson maps, Poisson actions, moment-map relations, the
h-product bracket identities, symplectic inversion, rank, and the
admissibility condition of the holomorphic covariant brackets.

All differentiation uses central differences along the real axis of each
complex coordinate (valid for holomorphic maps), optionally with one
Richardson extrapolation level; exact Jacobians should be supplied for
linear maps.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from . import charts
from .brackets import BracketSpec, HoloFn1, sts_rhs_tensor
from .errors import ConfigError, ZeroG
from .factorization import g_functions, g_pm, gamma
from .points import SPoint, SpinPoint, SpinTuple
from .tensors import Tensor4, dj_r, r_pm

__all__ = [
    "DiffScheme",
    "VerificationReport",
    "jacobian_fd",
    "jacobi_residual",
    "poisson_map_residual",
    "anti_poisson_residual",
    "action_residual",
    "bracket_coord_fn",
    "bracket_functions",
    "moment_residuals",
    "lemma_h_residuals",
    "symplectic_matrix",
    "symplectic_inversion_residual",
    "rank_at",
    "zak_condition_residual",
]


@dataclass(frozen=True)
class DiffScheme:
    """Finite-difference configuration for holomorphic derivatives."""

    step: float = 1e-5
    richardson: bool = True
    direction: str = "real-axis"

    def __post_init__(self):
        if not (1e-9 <= self.step <= 1e-2):
            raise ConfigError(f"step {self.step} outside [1e-9, 1e-2]")
        if self.direction not in ("real-axis", "imag-axis"):
            raise ConfigError(f"unknown direction {self.direction!r}")


@dataclass(frozen=True)
class VerificationReport:
    suite: str
    params: dict
    seed: int
    samples: int
    tolerance: float
    max_residual: float
    ok: bool
    failures: tuple = ()

    def __post_init__(self):
        if self.ok != (self.max_residual <= self.tolerance):
            raise ValueError("pass flag inconsistent with residual/tolerance")


def _jac_once(f: Callable[[np.ndarray], np.ndarray], x: np.ndarray, h: float, direction: str) -> np.ndarray:
    x = np.asarray(x, dtype=complex)
    dim = x.size
    delta = h if direction == "real-axis" else 1j * h
    cols = []
    for l in range(dim):
        e = np.zeros(dim, dtype=complex)
        e[l] = delta
        cols.append((np.asarray(f(x + e)) - np.asarray(f(x - e))) / (2 * delta))
    return np.stack(cols, axis=-1)


def jacobian_fd(f: Callable[[np.ndarray], np.ndarray], x: np.ndarray, scheme: DiffScheme = DiffScheme()) -> np.ndarray:
    """Central-difference Jacobian of a holomorphic map, shape (len(f), len(x))."""
    J = _jac_once(f, x, scheme.step, scheme.direction)
    if scheme.richardson:
        J = (4.0 * _jac_once(f, x, scheme.step / 2, scheme.direction) - J) / 3.0
    return J


def jacobi_residual(spec: BracketSpec, x: np.ndarray, scheme: DiffScheme = DiffScheme()) -> float:
    """Max over coordinate triples of the cyclic Jacobiator of the bivector."""
    x = np.asarray(x, dtype=complex)
    dim = spec.dim
    Pi0 = spec.bivector(x)

    def dmat(h: float) -> np.ndarray:
        delta = h if scheme.direction == "real-axis" else 1j * h
        dPi = np.empty((dim, dim, dim), dtype=complex)
        for l in range(dim):
            e = np.zeros(dim, dtype=complex)
            e[l] = delta
            dPi[l] = (spec.bivector(x + e) - spec.bivector(x - e)) / (2 * delta)
        return dPi

    dPi = dmat(scheme.step)
    if scheme.richardson:
        dPi = (4.0 * dmat(scheme.step / 2) - dPi) / 3.0
    T = np.einsum("il,ljk->ijk", Pi0, dPi)
    J = T + T.transpose(1, 2, 0) + T.transpose(2, 0, 1)
    return float(np.max(np.abs(J)))


def poisson_map_residual(
    src: BracketSpec,
    tgt: BracketSpec,
    f: Callable[[np.ndarray], np.ndarray],
    x: np.ndarray,
    scheme: DiffScheme = DiffScheme(),
    jac: Optional[Callable[[np.ndarray], np.ndarray]] = None,
) -> float:
    """max |J Pi_src(x) J^T - Pi_tgt(f(x))| with J the Jacobian of f at x."""
    x = np.asarray(x, dtype=complex)
    J = jac(x) if jac is not None else jacobian_fd(f, x, scheme)
    return float(np.max(np.abs(J @ src.bivector(x) @ J.T - tgt.bivector(np.asarray(f(x))))))


def anti_poisson_residual(
    spec: BracketSpec,
    f: Callable[[np.ndarray], np.ndarray],
    x: np.ndarray,
    scheme: DiffScheme = DiffScheme(),
    jac: Optional[Callable[[np.ndarray], np.ndarray]] = None,
) -> float:
    """max |J Pi(x) J^T + Pi(f(x))|."""
    x = np.asarray(x, dtype=complex)
    J = jac(x) if jac is not None else jacobian_fd(f, x, scheme)
    return float(np.max(np.abs(J @ spec.bivector(x) @ J.T + spec.bivector(np.asarray(f(x))))))


def action_residual(
    group_spec: BracketSpec,
    space_spec: BracketSpec,
    action: Callable[[np.ndarray, np.ndarray], np.ndarray],
    g: np.ndarray,
    x: np.ndarray,
    scheme: DiffScheme = DiffScheme(),
) -> float:
    """Poisson-action defect: |J_g Pi_G(g) J_g^T + J_x Pi_S(x) J_x^T - Pi_S(g.x)|."""
    g = np.asarray(g, dtype=complex)
    x = np.asarray(x, dtype=complex)
    Jg = jacobian_fd(lambda gg: action(gg, x), g, scheme)
    Jx = jacobian_fd(lambda xx: action(g, xx), x, scheme)
    lhs = Jg @ group_spec.bivector(g) @ Jg.T + Jx @ space_spec.bivector(x) @ Jx.T
    return float(np.max(np.abs(lhs - space_spec.bivector(np.asarray(action(g, x))))))


def bracket_functions(
    spec: BracketSpec,
    x: np.ndarray,
    f: Callable[[np.ndarray], np.ndarray],
    g: Callable[[np.ndarray], np.ndarray],
    scheme: DiffScheme = DiffScheme(),
) -> np.ndarray:
    """Matrix of brackets {f_p, g_q} at x via the chain rule Jf Pi Jg^T."""
    x = np.asarray(x, dtype=complex)
    Jf = jacobian_fd(f, x, scheme)
    Jg = jacobian_fd(g, x, scheme)
    return Jf @ spec.bivector(x) @ Jg.T


def bracket_coord_fn(
    spec: BracketSpec,
    x: np.ndarray,
    coord_index: int,
    f: Callable[[np.ndarray], complex],
    scheme: DiffScheme = DiffScheme(),
) -> complex:
    """The bracket {x_p, f} = sum_c Pi[p, c] d_c f at x."""
    x = np.asarray(x, dtype=complex)
    grad = jacobian_fd(lambda xx: np.atleast_1d(f(xx)), x, scheme)[0]
    return complex(spec.bivector(x)[coord_index] @ grad)


# --- moment-map identities ----------------------------------------------------


def _gamma_flat(x: np.ndarray, n: int, d: int) -> np.ndarray:
    return gamma(charts.unpack_spoint(x, n, d)).ravel()


def moment_residuals(kappa: complex, point: SPoint, scheme: DiffScheme = DiffScheme()) -> dict:
    """Residuals of the quadratic moment-map bracket identities at one point.

    Returns a dict with: the closed bracket relation of Gamma = 1 + AB with
    itself ('Ga1') and with the coordinates ('Ga2_A', 'Ga2_B'); the per-copy
    factor relations on the first column/row spin pair ('mom1_*'); and the
    same set for the hatted structure with Gamma-hat = 1 - AB ('*prime').
    """
    n, d = point.n, point.d
    x = charts.pack_spoint(point)
    spec = BracketSpec("S", kappa, n=n, d=d)
    rn, rpn, rmn = dj_r(n), r_pm(n, +1), r_pm(n, -1)
    out: dict[str, float] = {}

    # coordinates-and-Gamma in one map so Jacobian blocks share probes
    def full(xx):
        return np.concatenate([xx, _gamma_flat(xx, n, d)])

    Gm = gamma(point)
    nd = n * d
    M = bracket_functions(spec, x, full, full, scheme)
    GG = M[2 * nd :, 2 * nd :]
    AG = M[:nd, 2 * nd :]
    BG = M[nd : 2 * nd, 2 * nd :]

    rhs_GG = sts_rhs_tensor(kappa, Gm, n).array.reshape(n * n, n * n)
    out["Ga1"] = float(np.max(np.abs(GG - rhs_GG)))
    # {A1, G2} = kappa (G2 r+ - r- G2) A1 ; {B1, G2} = kappa B1 (r- G2 - G2 r+)
    rhs_A = (kappa * (rpn.lmul2(Gm) - rmn.rmul2(Gm)).rmul1(point.A)).array.reshape(nd, n * n)
    rhs_B = (kappa * (rmn.rmul2(Gm) - rpn.lmul2(Gm)).lmul1(point.B)).array.reshape(nd, n * n)
    out["Ga2_A"] = float(np.max(np.abs(AG - rhs_A)))
    out["Ga2_B"] = float(np.max(np.abs(BG - rhs_B)))

    # factor relations for (g_+, g_-) on the spin pair from the first column/row
    sp = SpinPoint(point.A[:, 0], point.B[0, :])
    s_spec = BracketSpec("S", kappa, n=n, d=1)
    xs = charts.pack_spoint(sp.as_spoint())
    a_col = sp.a[:, None]
    b_row = sp.b[None, :]

    def gplus_flat(xx):
        p = charts.unpack_spoint(xx, n, 1)
        return g_pm(SpinPoint(p.A[:, 0], p.B[0, :])).hplus.ravel()

    def gminus_flat(xx):
        p = charts.unpack_spoint(xx, n, 1)
        return g_pm(SpinPoint(p.A[:, 0], p.B[0, :])).hminus.ravel()

    def coords(xx):
        return xx

    pair = g_pm(sp)
    Mab_p = bracket_functions(s_spec, xs, coords, gplus_flat, scheme)
    Mab_m = bracket_functions(s_spec, xs, coords, gminus_flat, scheme)
    # {A1, phi+-2} = -kappa r_-+ A1 phi+-2 ; {B1, phi+-2} = kappa B1 r_-+ phi+-2
    rhs = (-kappa * rmn.rmul1(a_col).rmul2(pair.hplus)).array.reshape(n, n * n)
    out["mom1_gplus_a"] = float(np.max(np.abs(Mab_p[:n] - rhs)))
    rhs = (kappa * rmn.lmul1(b_row).rmul2(pair.hplus)).array.reshape(n, n * n)
    out["mom1_gplus_b"] = float(np.max(np.abs(Mab_p[n:] - rhs)))
    rhs = (-kappa * rpn.rmul1(a_col).rmul2(pair.hminus)).array.reshape(n, n * n)
    out["mom1_gminus_a"] = float(np.max(np.abs(Mab_m[:n] - rhs)))
    rhs = (kappa * rpn.lmul1(b_row).rmul2(pair.hminus)).array.reshape(n, n * n)
    out["mom1_gminus_b"] = float(np.max(np.abs(Mab_m[n:] - rhs)))

    # hatted counterpart: Gamma-hat = 1 - AB under the primed bracket,
    # same right-hand sides with an overall minus sign
    h_spec = BracketSpec("Prime", kappa, n=n, d=d)

    def full_hat(xx):
        p = charts.unpack_spoint(xx, n, d)
        gh = np.eye(n, dtype=complex) - p.A @ p.B
        return np.concatenate([xx, gh.ravel()])

    Gh = np.eye(n, dtype=complex) - point.A @ point.B
    Mh = bracket_functions(h_spec, x, full_hat, full_hat, scheme)
    GGh = Mh[2 * nd :, 2 * nd :]
    AGh = Mh[:nd, 2 * nd :]
    BGh = Mh[nd : 2 * nd, 2 * nd :]
    rhs_GGh = -sts_rhs_tensor(kappa, Gh, n).array.reshape(n * n, n * n)
    out["Ga1prime"] = float(np.max(np.abs(GGh - rhs_GGh)))
    rhs_Ah = (-kappa * (rpn.lmul2(Gh) - rmn.rmul2(Gh)).rmul1(point.A)).array.reshape(nd, n * n)
    rhs_Bh = (-kappa * (rmn.rmul2(Gh) - rpn.lmul2(Gh)).lmul1(point.B)).array.reshape(nd, n * n)
    out["Ga2prime_A"] = float(np.max(np.abs(AGh - rhs_Ah)))
    out["Ga2prime_B"] = float(np.max(np.abs(BGh - rhs_Bh)))
    return out


# --- bracket identities for the ordered factor products ------------------------


def _h_products(t: SpinTuple):
    """Per-copy factors and the cumulative products h+^al, h-^al (index 0..d)."""
    n = t.n
    pairs = [g_pm(s) for s in t]
    gminus_inv = [np.linalg.inv(p.hminus) for p in pairs]
    hp = [np.eye(n, dtype=complex)]
    hm = [np.eye(n, dtype=complex)]
    for al in range(t.d):
        hp.append(hp[-1] @ pairs[al].hplus)
        hm.append(gminus_inv[al] @ hm[-1])
    return pairs, gminus_inv, hp, hm


def _h_range(factors, al: int, gm: int) -> np.ndarray:
    """h+^{al;gm} = g(al)...g(gm) for a list of per-copy factors (1-based, empty = I)."""
    n = factors[0].shape[0] if factors else 1
    out = np.eye(n, dtype=complex)
    for g in range(al, gm + 1):
        out = out @ factors[g - 1]
    return out


def _hm_range(gminus_inv, al: int, gm: int) -> np.ndarray:
    """h-^{al;gm} = g_-(gm)^-1 ... g_-(al)^-1 (1-based, empty = I)."""
    n = gminus_inv[0].shape[0]
    out = np.eye(n, dtype=complex)
    for g in range(gm, al - 1, -1):
        out = out @ gminus_inv[g - 1]
    return out


def lemma_h_residuals(kappa: complex, t: SpinTuple, scheme: DiffScheme = DiffScheme()) -> dict:
    """Residuals of the seven bracket identities between the spin coordinates,
    the cumulative products h+-^beta, and among the h's themselves, maximized
    over all index pairs (alpha, beta).
    """
    n, d = t.n, t.d
    spec = BracketSpec("Sprod", kappa, n=n, d=d)
    x = charts.pack_tuple(t)
    rn, rp, rm = dj_r(n), r_pm(n, +1), r_pm(n, -1)
    pairs, gminus_inv, hp, hm = _h_products(t)
    gp_list = [p.hplus for p in pairs]

    # one evaluation map: all coordinates, then h+^1..d and h-^1..d flattened
    def full(xx):
        tt = charts.unpack_tuple(xx, n, d)
        _, _, hpx, hmx = _h_products(tt)
        return np.concatenate([xx] + [m.ravel() for m in hpx[1:]] + [m.ravel() for m in hmx[1:]])

    M = bracket_functions(spec, x, full, full, scheme)
    dim = 2 * n * d
    n2 = n * n

    def a_rows(al):  # coordinates a^al occupy [2n(al-1), 2n(al-1)+n)
        base = 2 * n * (al - 1)
        return slice(base, base + n)

    def b_rows(al):
        base = 2 * n * (al - 1) + n
        return slice(base, base + n)

    def hp_cols(be):
        base = dim + n2 * (be - 1)
        return slice(base, base + n2)

    def hm_cols(be):
        base = dim + n2 * d + n2 * (be - 1)
        return slice(base, base + n2)

    keys = ["a_hplus", "b_hplus", "a_hminus", "b_hminus", "hplus_hplus", "hplus_hminus_le", "hplus_hminus_ge"]
    out = {k: 0.0 for k in keys}

    def upd(key, lhs, rhs_t4, rows_shape):
        rhs = rhs_t4.array.reshape(rows_shape)
        out[key] = max(out[key], float(np.max(np.abs(lhs - rhs))))

    for al in range(1, d + 1):
        a_col = t[al - 1].a[:, None]
        b_row = t[al - 1].b[None, :]
        for be in range(1, d + 1):
            lhs_ap = M[a_rows(al), hp_cols(be)]
            lhs_bp = M[b_rows(al), hp_cols(be)]
            lhs_am = M[a_rows(al), hm_cols(be)]
            lhs_bm = M[b_rows(al), hm_cols(be)]
            if al <= be:
                hpr = _h_range(gp_list, al, be)  # h+^{al;be}
                hmr = _hm_range(gminus_inv, al, be)
                upd("a_hplus", lhs_ap, -kappa * rm.rmul1(a_col).lmul2(hp[al - 1]).rmul2(hpr), (n, n2))
                upd("b_hplus", lhs_bp, kappa * rm.lmul1(b_row).lmul2(hp[al - 1]).rmul2(hpr), (n, n2))
                upd("a_hminus", lhs_am, kappa * rp.rmul1(a_col).lmul2(hmr).rmul2(hm[al - 1]), (n, n2))
                upd("b_hminus", lhs_bm, -kappa * rp.lmul1(b_row).lmul2(hmr).rmul2(hm[al - 1]), (n, n2))
            else:
                for key, lhs in (("a_hplus", lhs_ap), ("b_hplus", lhs_bp), ("a_hminus", lhs_am), ("b_hminus", lhs_bm)):
                    out[key] = max(out[key], float(np.max(np.abs(lhs))))

    hph = M[dim : dim + n2 * d, dim : dim + n2 * d]
    hphm = M[dim : dim + n2 * d, dim + n2 * d :]
    for al in range(1, d + 1):
        for be in range(1, d + 1):
            blk_pp = hph[n2 * (al - 1) : n2 * al, n2 * (be - 1) : n2 * be]
            blk_pm = hphm[n2 * (al - 1) : n2 * al, n2 * (be - 1) : n2 * be]
            if al <= be:
                mid = _h_range(gp_list, al + 1, be)  # h+^{al+1;be}
                rhs = kappa * (rn.lmul1(hp[al]).lmul2(hp[al]).rmul2(mid) - rn.rmul1(hp[al]).rmul2(hp[be]))
                upd("hplus_hplus", blk_pp, rhs, (n2, n2))
                midm = _hm_range(gminus_inv, al + 1, be)  # h-^{al+1;be}
                rhs = kappa * (rp.lmul2(hm[be]).rmul1(hp[al]) - rp.lmul1(hp[al]).lmul2(midm).rmul2(hm[al]))
                upd("hplus_hminus_le", blk_pm, rhs, (n2, n2))
            if al >= be:
                midp = _h_range(gp_list, be + 1, al)  # h+^{be+1;al}
                rhs = kappa * (rp.lmul2(hm[be]).rmul1(hp[al]) - rp.lmul1(hp[be]).rmul1(midp).rmul2(hm[be]))
                upd("hplus_hminus_ge", blk_pm, rhs, (n2, n2))
    return out


# --- symplectic form, rank, admissibility --------------------------------------


def symplectic_matrix(kappa: complex, p: SpinPoint) -> np.ndarray:
    """Matrix of the local symplectic 2-form in the chart (a_1..a_n, b_1..b_n)."""
    n = p.n
    G = g_functions(p)
    scale = max(1.0, float(np.max(np.abs(G))))
    for j in range(1, n + 1):
        if abs(G[j]) <= 1e-12 * scale:
            raise ZeroG(j, G[j])
    a, b = p.a, p.b
    Om = np.zeros((2 * n, 2 * n), dtype=complex)
    for i in range(1, n + 1):
        Om[i - 1, n + i - 1] += -1.0 / (kappa * G[i])
        c = 1.0 / (2 * kappa * G[i] * G[i + 1])
        for s in range(i + 1, n + 1):
            Om[i - 1, s - 1] += c * b[i - 1] * b[s - 1]
            Om[i - 1, n + s - 1] += c * b[i - 1] * a[s - 1]
            Om[n + i - 1, s - 1] += -c * a[i - 1] * b[s - 1]
            Om[n + i - 1, n + s - 1] += -c * a[i - 1] * a[s - 1]
    # each wedge term was placed once; folding produces the antisymmetric matrix
    return Om - Om.T


def symplectic_inversion_residual(kappa: complex, p: SpinPoint) -> float:
    """|Omega Pi - I| with Pi the bracket matrix of the spin space at p."""
    from .brackets import s_bivector

    Om = symplectic_matrix(kappa, p)
    Pi = s_bivector(kappa, p.as_spoint())
    return float(np.max(np.abs(Om @ Pi - np.eye(2 * p.n))))


def rank_at(spec: BracketSpec, x: np.ndarray, sv_tolerance: float = 1e-10) -> int:
    """Numerical rank of the bracket matrix at x via its singular values."""
    sv = np.linalg.svd(spec.bivector(np.asarray(x, dtype=complex)), compute_uv=False)
    if sv.size == 0:
        return 0
    return int(np.count_nonzero(sv > sv_tolerance * max(float(sv[0]), 1.0)))


def zak_condition_residual(F: HoloFn1, G: HoloFn1, t: complex) -> float:
    """|F F' + G (F - F' t) - t|: zero iff the covariant bracket is Poisson for n >= 2."""
    Fv, Fp, Gv = F.eval(t), F.deriv(t), G.eval(t)
    return float(abs(Fv * Fp + Gv * (Fv - Fp * t) - t))
