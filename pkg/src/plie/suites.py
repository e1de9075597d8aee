"""Verification suites: named bundles of residual checks over seeded samples.

Each suite evaluates a set of identity checks at deterministic sample points
and reports a single normalized residual per sample: every raw residual is
divided by its own bound, so the suite passes iff the normalized maximum is
at most 1.  The per-check bounds appear in the report params.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import charts, decoupling as dc, factorization as fc, sampling, verify as vf
from .brackets import BracketSpec, HoloFn1, s_bivector_raw, s_bivector_tensor
from .errors import ConfigError
from .points import SPoint, SpinPoint
from .verify import DiffScheme, VerificationReport

__all__ = ["RunConfig", "SUITES", "run_suite"]

SUITES = (
    "jacobi",
    "decouple-m",
    "decouple-F",
    "factorization",
    "ao-maps",
    "moment",
    "lemma4",
    "symplectic",
    "rank",
    "zakrzewski",
    "actions",
    "all",
)


@dataclass(frozen=True)
class RunConfig:
    suite: str
    n: int = 2
    d: int = 2
    ell: int = 3
    kappa: complex = 1.0 + 0j
    epsilon: float = 1.0
    seed: int = 42
    samples: int = 25
    radius: float = 0.3
    tol_exact: float = 1e-10
    tol_fd: float = 1e-7
    fd_step: float = 1e-5
    threads: int = 1

    def __post_init__(self):
        if self.suite not in SUITES:
            raise ConfigError(f"unknown suite {self.suite!r}; choose from {', '.join(SUITES)}")
        for name in ("n", "d", "ell"):
            if getattr(self, name) < 1:
                raise ConfigError(f"{name} must be >= 1")
        if self.samples < 1:
            raise ConfigError("samples must be >= 1")
        if self.radius <= 0:
            raise ConfigError("radius must be > 0")
        if self.tol_exact <= 0 or self.tol_fd <= 0:
            raise ConfigError("tolerances must be > 0")
        if self.kappa == 0:
            raise ConfigError("kappa must be nonzero")
        if self.epsilon == 0:
            raise ConfigError("epsilon must be nonzero")
        if self.threads < 1:
            raise ConfigError("threads must be >= 1")


# schemes: central differences are exact (up to rounding) for polynomial
# bivectors at a large step; rational/root-bearing maps get a small step
# with one Richardson level.
_POLY = DiffScheme(step=1e-2, richardson=False)
_RATIONAL = DiffScheme(step=1e-3, richardson=True)


def _fd(cfg: RunConfig) -> DiffScheme:
    return DiffScheme(step=cfg.fd_step, richardson=True)


def _tuple_diff(t1, t2) -> float:
    return max(
        max(float(np.max(np.abs(u.a - v.a))), float(np.max(np.abs(u.b - v.b))))
        for u, v in zip(t1, t2)
    )


# --- individual suites -------------------------------------------------------


def _suite_jacobi(cfg: RunConfig):
    kinds_s = ("S", "AOplus", "AOminus", "Prime", "Sprod")
    kinds_gl = ("GLmult", "Double", "STS")
    bounds = {k: cfg.tol_exact for k in kinds_s + kinds_gl + ("DualGroup",)}
    params = {
        "kinds": sorted(bounds),
        "n": cfg.n,
        "d": cfg.d,
        "ell": cfg.ell,
        "kappa": cfg.kappa,
        "point_radius": 1.0,
        "bounds": bounds,
    }

    def sample(i: int) -> dict:
        out = {}
        for k in kinds_s:
            spec = BracketSpec(k, cfg.kappa, n=cfg.n, d=cfg.d)
            x = sampling.sample_vector(cfg.seed, i, spec.dim, 1.0)
            out[k] = vf.jacobi_residual(spec, x, _POLY) / bounds[k]
        for k in kinds_gl:
            spec = BracketSpec(k, cfg.kappa, ell=cfg.ell)
            x = sampling.sample_vector(cfg.seed, i, spec.dim, 1.0)
            out[k] = vf.jacobi_residual(spec, x, _POLY) / bounds[k]
        spec = BracketSpec("DualGroup", cfg.kappa, ell=cfg.ell)
        pair = sampling.sample_dual(cfg.seed, i, cfg.ell, 0.4)
        out["DualGroup"] = vf.jacobi_residual(spec, charts.pack_dual(pair), _RATIONAL) / bounds["DualGroup"]
        return out

    return params, cfg.samples, sample


def _suite_decouple_m(cfg: RunConfig):
    bounds = {"poisson_map": cfg.tol_fd, "roundtrip": cfg.tol_exact}
    params = {"n": cfg.n, "d": cfg.d, "kappa": cfg.kappa, "radius": cfg.radius, "bounds": bounds}
    src = BracketSpec("Sprod", cfg.kappa, n=cfg.n, d=cfg.d)
    tgt = BracketSpec("S", cfg.kappa, n=cfg.n, d=cfg.d)
    sch = _fd(cfg)

    def fmap(x):
        return charts.pack_spoint(dc.map_m(charts.unpack_tuple(x, cfg.n, cfg.d)))

    def sample(i: int) -> dict:
        t = sampling.sample_tuple(cfg.seed, i, cfg.n, cfg.d, cfg.radius)
        x = charts.pack_tuple(t)
        res_map = vf.poisson_map_residual(src, tgt, fmap, x, sch)
        res_rt = _tuple_diff(t, dc.map_m_inverse(dc.map_m(t)))
        return {"poisson_map": res_map / bounds["poisson_map"], "roundtrip": res_rt / bounds["roundtrip"]}

    return params, cfg.samples, sample


def _suite_decouple_F(cfg: RunConfig):
    bounds = {
        "poisson_map_F": cfg.tol_fd,
        "poisson_map_thetaF": cfg.tol_fd,
        "roundtrip": cfg.tol_exact,
        "residue_identity": cfg.tol_exact,
    }
    params = {"n": cfg.n, "d": cfg.d, "kappa": cfg.kappa, "radius": cfg.radius, "bounds": bounds}
    src = BracketSpec("Sprod", cfg.kappa, n=cfg.n, d=cfg.d)
    tgt_pr = BracketSpec("Prime", cfg.kappa, n=cfg.n, d=cfg.d)
    tgt_ao = BracketSpec("AOplus", cfg.kappa, n=cfg.n, d=cfg.d)
    th_a = 1.0
    th_b = -1.0 / cfg.kappa
    sch = _fd(cfg)

    def fmap(x):
        return charts.pack_spoint(dc.map_F(charts.unpack_tuple(x, cfg.n, cfg.d)))

    def thfmap(x):
        p = dc.map_F(charts.unpack_tuple(x, cfg.n, cfg.d))
        return charts.pack_spoint(dc.map_theta(p, th_a, th_b, cfg.kappa))

    def sample(i: int) -> dict:
        t = sampling.sample_tuple(cfg.seed, i, cfg.n, cfg.d, cfg.radius)
        x = charts.pack_tuple(t)
        out = {
            "poisson_map_F": vf.poisson_map_residual(src, tgt_pr, fmap, x, sch) / bounds["poisson_map_F"],
            "poisson_map_thetaF": vf.poisson_map_residual(src, tgt_ao, thfmap, x, sch)
            / bounds["poisson_map_thetaF"],
            "roundtrip": _tuple_diff(t, dc.map_F_inverse(dc.map_F(t))) / bounds["roundtrip"],
        }
        q = dc.map_theta(dc.map_F(t), th_a, th_b, cfg.kappa)
        GG = fc.calG_pm(t)
        lhs = np.eye(cfg.n) + cfg.kappa * q.A @ q.B
        rhs = np.linalg.solve(GG.hplus, GG.hminus)
        out["residue_identity"] = float(np.max(np.abs(lhs - rhs))) / bounds["residue_identity"]
        return out

    return params, cfg.samples, sample


def _suite_factorization(cfg: RunConfig):
    bounds = {"factid1": 1e-12, "factid2": 1e-11, "chi_roundtrip": cfg.tol_exact, "gauss": 1e-12}
    params = {"n": cfg.n, "d": cfg.d, "radius": cfg.radius, "bounds": bounds}

    def sample(i: int) -> dict:
        s = sampling.sample_spin(cfg.seed, i, cfg.n, cfg.radius)
        pair = fc.g_pm(s)
        res1 = float(np.max(np.abs(np.eye(cfg.n) + np.outer(s.a, s.b) - fc.chi(pair))))
        t = sampling.sample_tuple(cfg.seed, i, cfg.n, cfg.d, cfg.radius)
        p = dc.map_m(t)
        res2 = float(np.max(np.abs(fc.gamma(p) - fc.chi(fc.calG_pm(t)))))
        h = np.eye(cfg.n) + sampling.complex_disk(sampling.rng_for(cfg.seed, i), (cfg.n, cfg.n), cfg.radius)
        res3 = float(np.max(np.abs(fc.chi(fc.chi_inverse_local(h)) - h)))
        gt, g0, lt = fc.gauss(h)
        res4 = float(np.max(np.abs(gt @ g0 @ lt - h)))
        return {
            "factid1": res1 / bounds["factid1"],
            "factid2": res2 / bounds["factid2"],
            "chi_roundtrip": res3 / bounds["chi_roundtrip"],
            "gauss": res4 / bounds["gauss"],
        }

    return params, cfg.samples, sample


def _linear_jacobian(fmap: Callable[[np.ndarray], np.ndarray], dim: int) -> np.ndarray:
    y0 = np.asarray(fmap(np.zeros(dim, dtype=complex)))
    J = np.empty((y0.size, dim), dtype=complex)
    for l in range(dim):
        e = np.zeros(dim, dtype=complex)
        e[l] = 1.0
        J[:, l] = np.asarray(fmap(e)) - y0
    return J


def _suite_ao_maps(cfg: RunConfig):
    n, d, kap = cfg.n, cfg.d, cfg.kappa
    bounds = {k: cfg.tol_exact for k in ("xi", "nu", "theta", "iota", "iota_spin")}
    params = {"n": n, "d": d, "kappa": kap, "bounds": bounds}
    s_spec = BracketSpec("S", kap, n=n, d=d)
    xi_a = 1.0
    xi_b = -1.0 / kap
    maps = {
        "xi": (
            s_spec,
            BracketSpec("AOplus", -kap, n=n, d=d),
            lambda x: charts.pack_spoint(dc.map_xi(charts.unpack_spoint(x, n, d), xi_a, xi_b, kap)),
        ),
        "nu": (
            s_spec,
            BracketSpec("S", -kap, n=d, d=n),
            lambda x: charts.pack_spoint(dc.map_nu(charts.unpack_spoint(x, n, d))),
        ),
        "theta": (
            BracketSpec("Prime", kap, n=n, d=d),
            BracketSpec("AOplus", kap, n=n, d=d),
            lambda x: charts.pack_spoint(dc.map_theta(charts.unpack_spoint(x, n, d), xi_a, xi_b, kap)),
        ),
    }
    jacs = {k: _linear_jacobian(f, src.dim) for k, (src, tgt, f) in maps.items()}
    sprod = BracketSpec("Sprod", kap, n=n, d=d)
    iota_f = lambda x: charts.pack_tuple(dc.iota(charts.unpack_tuple(x, n, d)))
    J_iota = _linear_jacobian(iota_f, sprod.dim)
    F = HoloFn1(lambda t: 2 + t, lambda t: 1 + 0 * t, "F")
    G = HoloFn1(lambda t: -1 + 0 * t, lambda t: 0 * t, "G")
    zak = BracketSpec("ZakC", kap, n=n, F=F, G=G)
    swap = np.zeros((2 * n, 2 * n))
    swap[:n, n:] = np.eye(n)
    swap[n:, :n] = np.eye(n)

    def sample(i: int) -> dict:
        out = {}
        for k, (src, tgt, f) in maps.items():
            x = sampling.sample_vector(cfg.seed, i, src.dim, 1.0)
            out[k] = vf.poisson_map_residual(src, tgt, f, x, jac=lambda _x, k=k: jacs[k]) / bounds[k]
        x = sampling.sample_vector(cfg.seed, i, sprod.dim, 1.0)
        out["iota"] = vf.anti_poisson_residual(sprod, iota_f, x, jac=lambda _x: J_iota) / bounds["iota"]
        xz = sampling.sample_vector(cfg.seed, i, 2 * n, 1.0)
        out["iota_spin"] = (
            vf.anti_poisson_residual(zak, lambda xx: swap @ xx, xz, jac=lambda _x: swap) / bounds["iota_spin"]
        )
        return out

    return params, cfg.samples, sample


def _suite_moment(cfg: RunConfig):
    exact_keys = ("Ga1", "Ga2_A", "Ga2_B", "Ga1prime", "Ga2prime_A", "Ga2prime_B")
    fd_keys = ("mom1_gplus_a", "mom1_gplus_b", "mom1_gminus_a", "mom1_gminus_b")
    bounds = {k: cfg.tol_exact for k in exact_keys}
    bounds.update({k: 1e-6 for k in fd_keys})
    params = {"n": cfg.n, "d": cfg.d, "kappa": cfg.kappa, "radius": cfg.radius, "bounds": bounds}
    sch_fd = _fd(cfg)

    def sample(i: int) -> dict:
        p = sampling.sample_spoint(cfg.seed, i, cfg.n, cfg.d, cfg.radius)
        r_exact = vf.moment_residuals(cfg.kappa, p, _POLY)
        r_fd = vf.moment_residuals(cfg.kappa, p, sch_fd)
        out = {k: r_exact[k] / bounds[k] for k in exact_keys}
        out.update({k: r_fd[k] / bounds[k] for k in fd_keys})
        return out

    return params, cfg.samples, sample


def _suite_lemma4(cfg: RunConfig):
    keys = (
        "a_hplus",
        "b_hplus",
        "a_hminus",
        "b_hminus",
        "hplus_hplus",
        "hplus_hminus_le",
        "hplus_hminus_ge",
    )
    bounds = {k: 1e-6 for k in keys}
    params = {"n": cfg.n, "d": cfg.d, "kappa": cfg.kappa, "radius": cfg.radius, "bounds": bounds}
    sch = _fd(cfg)

    def sample(i: int) -> dict:
        t = sampling.sample_tuple(cfg.seed, i, cfg.n, cfg.d, cfg.radius)
        res = vf.lemma_h_residuals(cfg.kappa, t, sch)
        return {k: res[k] / bounds[k] for k in keys}

    return params, cfg.samples, sample


def _suite_symplectic(cfg: RunConfig):
    bounds = {"inversion": cfg.tol_exact}
    params = {"n": cfg.n, "kappa": cfg.kappa, "radius": cfg.radius, "bounds": bounds}

    def sample(i: int) -> dict:
        p = sampling.sample_spin(cfg.seed, i, cfg.n, cfg.radius)
        return {"inversion": vf.symplectic_inversion_residual(cfg.kappa, p) / bounds["inversion"]}

    return params, cfg.samples, sample


def _degenerate_spoint(n: int, d: int) -> SPoint:
    A = np.zeros((n, d), dtype=complex)
    B = np.zeros((d, n), dtype=complex)
    A[n - 1, 0] = 1.0
    B[0, n - 1] = -1.0
    return SPoint(A, B)


def _suite_rank(cfg: RunConfig):
    sizes = [(n, d) for n in range(2, 6) for d in range(2, 6)]
    spec0 = BracketSpec("S", cfg.kappa, n=cfg.n, d=cfg.d)
    degen_rank = vf.rank_at(spec0, charts.pack_spoint(_degenerate_spoint(cfg.n, cfg.d)), 1e-8)
    params = {
        "kappa": cfg.kappa,
        "sv_tolerance": 1e-8,
        "sizes": sizes,
        "origin_size": [cfg.n, cfg.d],
        "degenerate_rank": degen_rank,
        "bounds": {"rank_mismatch": 0.5},
    }

    def sample(i: int) -> dict:
        worst = 0.0
        for n, d in sizes:
            spec = BracketSpec("S", cfg.kappa, n=n, d=d)
            r = vf.rank_at(spec, charts.pack_spoint(_degenerate_spoint(n, d)), 1e-8)
            worst = max(worst, float(abs(r - 2 * (n - 1) * (d - 1))))
        spec = BracketSpec("S", cfg.kappa, n=cfg.n, d=cfg.d)
        r = vf.rank_at(spec, np.zeros(spec.dim, dtype=complex), 1e-8)
        worst = max(worst, float(abs(r - 2 * cfg.n * cfg.d)))
        return {"rank_mismatch": worst / 0.5}

    return params, 1, sample


def _suite_zakrzewski(cfg: RunConfig):
    n = max(cfg.n, 2)
    bounds = {
        "jacobi_affine": 1e-8,
        "jacobi_linear": 1e-8,
        "jacobi_affine_real": 1e-8,
        "condition_affine": 1e-12,
        "condition_linear": 1e-12,
        "dichotomy": 1.0,
    }
    params = {"n": n, "kappa": cfg.kappa, "epsilon": cfg.epsilon, "bounds": bounds}
    F_aff = HoloFn1(lambda t: 2 + t, lambda t: 1 + 0 * t, "F")
    G_aff = HoloFn1(lambda t: -1 + 0 * t, lambda t: 0 * t, "G")
    F_lin = HoloFn1(lambda t: t, lambda t: 1 + 0 * t, "F")
    G_zero = HoloFn1(lambda t: 0 * t, lambda t: 0 * t, "G")
    F_one = HoloFn1(lambda t: 1 + 0 * t, lambda t: 0 * t, "F")
    spec_aff = BracketSpec("ZakC", cfg.kappa, n=n, F=F_aff, G=G_aff)
    spec_lin = BracketSpec("ZakC", cfg.kappa, n=n, F=F_lin, G=G_zero)
    spec_real = BracketSpec("ZakR", epsilon=cfg.epsilon, n=n, F=F_aff, G=G_aff)
    spec_bad = BracketSpec("ZakC", cfg.kappa, n=n, F=F_one, G=G_zero)

    def sample(i: int) -> dict:
        x = sampling.sample_vector(cfg.seed, i, 2 * n, 1.0)
        t = complex(np.sum(x[:n] * x[n:]))
        out = {
            "jacobi_affine": vf.jacobi_residual(spec_aff, x, _POLY) / bounds["jacobi_affine"],
            "jacobi_linear": vf.jacobi_residual(spec_lin, x, _POLY) / bounds["jacobi_linear"],
            "jacobi_affine_real": vf.jacobi_residual(spec_real, x, _POLY) / bounds["jacobi_affine_real"],
            "condition_affine": vf.zak_condition_residual(F_aff, G_aff, t) / bounds["condition_affine"],
            "condition_linear": vf.zak_condition_residual(F_lin, G_zero, t) / bounds["condition_linear"],
        }
        # inadmissible (F, G): Jacobi must visibly fail at generic points
        bad = vf.jacobi_residual(spec_bad, x, _POLY)
        out["dichotomy"] = 0.0 if bad > 1e-4 else 2.0
        return out

    return params, cfg.samples, sample


def _suite_actions(cfg: RunConfig):
    n, d, kap = cfg.n, cfg.d, cfg.kappa
    bounds = {"gl_n_action": cfg.tol_fd, "gl_d_action": cfg.tol_fd, "spin_action": cfg.tol_fd}
    params = {"n": n, "d": d, "kappa": kap, "radius": cfg.radius, "bounds": bounds}
    gspec_n = BracketSpec("GLmult", kap, ell=n)
    gspec_d = BracketSpec("GLmult", kap, ell=d)
    sspec = BracketSpec("S", kap, n=n, d=d)
    sch = _fd(cfg)
    F = HoloFn1(lambda t: 2 + t, lambda t: 1 + 0 * t, "F")
    G = HoloFn1(lambda t: -1 + 0 * t, lambda t: 0 * t, "G")
    zspec = BracketSpec("ZakC", kap, n=n, F=F, G=G)

    def act_n(gv, xv):
        g = gv.reshape(n, n)
        p = charts.unpack_spoint(xv, n, d)
        return charts.pack_spoint(SPoint(g @ p.A, p.B @ np.linalg.inv(g)))

    def act_d(gv, xv):
        g = gv.reshape(d, d)
        p = charts.unpack_spoint(xv, n, d)
        return charts.pack_spoint(SPoint(p.A @ np.linalg.inv(g), g @ p.B))

    def act_z(gv, xv):
        g = gv.reshape(n, n)
        return np.concatenate([g @ xv[:n], xv[n:] @ np.linalg.inv(g)])

    def sample(i: int) -> dict:
        rng = sampling.rng_for(cfg.seed, i)
        gn = np.eye(n) + sampling.complex_disk(rng, (n, n), 0.2)
        gd = np.eye(d) + sampling.complex_disk(rng, (d, d), 0.2)
        x = np.concatenate(
            [sampling.complex_disk(rng, n * d, cfg.radius), sampling.complex_disk(rng, n * d, cfg.radius)]
        )
        xz = sampling.complex_disk(rng, 2 * n, cfg.radius)
        return {
            "gl_n_action": vf.action_residual(gspec_n, sspec, act_n, gn.ravel(), x, sch) / bounds["gl_n_action"],
            "gl_d_action": vf.action_residual(gspec_d, sspec, act_d, gd.ravel(), x, sch) / bounds["gl_d_action"],
            "spin_action": vf.action_residual(gspec_n, zspec, act_z, gn.ravel(), xz, sch) / bounds["spin_action"],
        }

    return params, cfg.samples, sample


_BUILDERS = {
    "jacobi": _suite_jacobi,
    "decouple-m": _suite_decouple_m,
    "decouple-F": _suite_decouple_F,
    "factorization": _suite_factorization,
    "ao-maps": _suite_ao_maps,
    "moment": _suite_moment,
    "lemma4": _suite_lemma4,
    "symplectic": _suite_symplectic,
    "rank": _suite_rank,
    "zakrzewski": _suite_zakrzewski,
    "actions": _suite_actions,
}


def _execute(cfg: RunConfig, suite: str) -> VerificationReport:
    params, count, sample = _BUILDERS[suite](cfg)

    def run_one(i: int):
        res = sample(i)
        worst_key = max(res, key=lambda k: res[k])
        return i, float(res[worst_key]), worst_key

    if cfg.threads > 1:
        with ThreadPoolExecutor(max_workers=cfg.threads) as ex:
            results = list(ex.map(run_one, range(count)))
    else:
        results = [run_one(i) for i in range(count)]
    results.sort(key=lambda r: r[0])

    max_res = max(r[1] for r in results)
    failures = tuple(
        (i, r, f"seed={cfg.seed} index={i} check={key}") for i, r, key in results if r > 1.0
    )
    return VerificationReport(
        suite=suite,
        params=params,
        seed=cfg.seed,
        samples=count,
        tolerance=1.0,
        max_residual=max_res,
        ok=max_res <= 1.0,
        failures=failures,
    )


def run_suite(cfg: RunConfig) -> VerificationReport:
    """Execute the configured suite; 'all' aggregates every other suite."""
    if cfg.suite != "all":
        return _execute(cfg, cfg.suite)
    reports = {name: _execute(cfg, name) for name in _BUILDERS}
    max_res = max(r.max_residual for r in reports.values())
    failures = tuple(
        (i, res, f"{name}: {digest}") for name, r in reports.items() for i, res, digest in r.failures
    )
    params = {
        "suites": {name: {"max_residual": r.max_residual, "pass": r.ok} for name, r in reports.items()}
    }
    return VerificationReport(
        suite="all",
        params=params,
        seed=cfg.seed,
        samples=sum(r.samples for r in reports.values()),
        tolerance=1.0,
        max_residual=max_res,
        ok=max_res <= 1.0,
        failures=failures,
    )
