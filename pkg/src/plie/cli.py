"""Command-line interface: seeded point generation and verification suites.

Exit codes: 0 suite passed, 1 suite failed, 2 invalid configuration,
3 internal evaluation error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Any, Optional

import numpy as np

from . import charts, sampling
from .errors import ConfigError, PlieError
from .suites import SUITES, RunConfig, run_suite
from .verify import VerificationReport

__all__ = ["main", "build_parser", "report_to_json"]

_SPACES = ("spoint", "spin", "tuple", "gl", "double", "dual")


def _jsonable(value: Any):
    """Recursively convert values to JSON-friendly form; complex -> [re, im]."""
    if isinstance(value, complex):
        return [value.real, value.imag]
    if isinstance(value, (np.complexfloating,)):
        return [float(value.real), float(value.imag)]
    if isinstance(value, (np.floating, np.integer)):
        return value.item()
    if isinstance(value, np.ndarray):
        return [_jsonable(v) for v in value.tolist()]
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


def report_to_json(report: VerificationReport) -> str:
    payload = {
        "suite": report.suite,
        "params": _jsonable(report.params),
        "seed": report.seed,
        "samples": report.samples,
        "tolerance": report.tolerance,
        "max_residual": report.max_residual,
        "pass": report.ok,
        "failures": [
            {"index": i, "residual": r, "digest": d} for i, r, d in report.failures
        ],
    }
    return json.dumps(payload, sort_keys=True, indent=2)


def _parse_complex(text: str) -> complex:
    try:
        parts = [float(p) for p in text.split(",")]
    except ValueError as exc:
        raise ConfigError(f"cannot parse complex value {text!r}; use 're,im'") from exc
    if len(parts) == 1:
        return complex(parts[0], 0.0)
    if len(parts) == 2:
        return complex(parts[0], parts[1])
    raise ConfigError(f"cannot parse complex value {text!r}; use 're,im'")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="plie", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run a verification suite and emit a JSON report")
    v.add_argument("--suite", required=True, choices=SUITES)
    v.add_argument("--n", type=int, default=None)
    v.add_argument("--d", type=int, default=None)
    v.add_argument("--ell", type=int, default=None)
    v.add_argument("--kappa", type=str, default=None, help="complex value as 're,im'")
    v.add_argument("--epsilon", type=float, default=None)
    v.add_argument("--seed", type=int, default=None)
    v.add_argument("--samples", type=int, default=None)
    v.add_argument("--radius", type=float, default=None)
    v.add_argument("--tol-exact", type=float, default=None, dest="tol_exact")
    v.add_argument("--tol-fd", type=float, default=None, dest="tol_fd")
    v.add_argument("--fd-step", type=float, default=None, dest="fd_step")
    v.add_argument("--threads", type=int, default=None)
    v.add_argument("--config", type=str, default=None, help="JSON file with defaults (flags win)")
    v.add_argument("--out", type=str, default=None, help="report path (default: stdout)")

    g = sub.add_parser("gen-point", help="emit a deterministic sample point as JSON")
    g.add_argument("--space", required=True, choices=_SPACES)
    g.add_argument("--n", type=int, default=2)
    g.add_argument("--d", type=int, default=2)
    g.add_argument("--ell", type=int, default=3)
    g.add_argument("--seed", type=int, default=None)
    g.add_argument("--index", type=int, default=0)
    g.add_argument("--radius", type=float, default=0.3)
    g.add_argument("--out", type=str, default=None)
    return parser


def _env_seed() -> Optional[int]:
    raw = os.environ.get("PLIE_SEED")
    if raw is None or raw == "":
        return None
    try:
        return int(raw)
    except ValueError as exc:
        raise ConfigError(f"PLIE_SEED must be an integer, got {raw!r}") from exc


def _build_config(args: argparse.Namespace) -> RunConfig:
    file_cfg: dict = {}
    if args.config:
        try:
            with open(args.config) as fh:
                file_cfg = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config file {args.config}: {exc}") from exc
        if not isinstance(file_cfg, dict):
            raise ConfigError("config file must hold a JSON object")

    def pick(name: str, default):
        flag = getattr(args, name, None)
        if flag is not None:
            return flag
        if name in file_cfg:
            return file_cfg[name]
        return default

    kappa = pick("kappa", 1.0 + 0j)
    if isinstance(kappa, str):
        kappa = _parse_complex(kappa)
    elif isinstance(kappa, (list, tuple)):
        kappa = complex(kappa[0], kappa[1])

    seed = pick("seed", None)
    if seed is None:
        seed = _env_seed()
    if seed is None:
        seed = 42
    if seed < 0:
        raise ConfigError("seed must be a nonnegative integer")

    return RunConfig(
        suite=args.suite,
        n=int(pick("n", 2)),
        d=int(pick("d", 2)),
        ell=int(pick("ell", 3)),
        kappa=complex(kappa),
        epsilon=float(pick("epsilon", 1.0)),
        seed=int(seed),
        samples=int(pick("samples", 25)),
        radius=float(pick("radius", 0.3)),
        tol_exact=float(pick("tol_exact", 1e-10)),
        tol_fd=float(pick("tol_fd", 1e-7)),
        fd_step=float(pick("fd_step", 1e-5)),
        threads=int(pick("threads", 1)),
    )


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _cmd_verify(args: argparse.Namespace) -> int:
    cfg = _build_config(args)
    try:
        report = run_suite(cfg)
    except PlieError as exc:
        print(f"internal evaluation error: {exc}", file=sys.stderr)
        return 3
    _emit(report_to_json(report), args.out)
    return 0 if report.ok else 1


def _cmd_gen_point(args: argparse.Namespace) -> int:
    seed = args.seed if args.seed is not None else (_env_seed() or 42)
    n, d, ell, r, i = args.n, args.d, args.ell, args.radius, args.index
    if min(n, d, ell) < 1 or r <= 0 or i < 0:
        raise ConfigError("sizes must be >= 1, radius > 0, index >= 0")
    if args.space == "spoint":
        p = sampling.sample_spoint(seed, i, n, d, r)
        payload = {"space": "spoint", "n": n, "d": d, "A": p.A, "B": p.B}
    elif args.space == "spin":
        s = sampling.sample_spin(seed, i, n, r)
        payload = {"space": "spin", "n": n, "a": s.a, "b": s.b}
    elif args.space == "tuple":
        t = sampling.sample_tuple(seed, i, n, d, r)
        payload = {
            "space": "tuple",
            "n": n,
            "d": d,
            "copies": [{"a": s.a, "b": s.b} for s in t],
        }
    elif args.space == "gl":
        payload = {"space": "gl", "ell": ell, "g": sampling.sample_gl(seed, i, ell, r)}
    elif args.space == "double":
        u, vv = sampling.sample_double(seed, i, ell, r)
        payload = {"space": "double", "ell": ell, "u": u, "v": vv}
    else:
        pr = sampling.sample_dual(seed, i, ell, r)
        payload = {"space": "dual", "ell": ell, "hplus": pr.hplus, "hminus": pr.hminus}
    payload["seed"] = seed
    payload["index"] = i
    payload["radius"] = r
    _emit(json.dumps(_jsonable(payload), sort_keys=True, indent=2), args.out)
    return 0


def main(argv: Optional[list] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits with 2 on bad usage already; re-raise others
        return int(exc.code) if exc.code else 0
    try:
        if args.command == "verify":
            return _cmd_verify(args)
        return _cmd_gen_point(args)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    except PlieError as exc:
        print(f"internal evaluation error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
