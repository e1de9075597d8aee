"""Compare the compiled and NumPy bracket-matrix kernels.

Usage: python benchmarks/bench_kernels.py [--sizes 2x2,4x4,8x8,16x16] [--repeat 200]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from plie import _kernels_py

try:
    from plie import _kernels_cy
except ImportError:
    _kernels_cy = None


def _bench(fn, args, repeat: int) -> float:
    fn(*args)  # warm up
    t0 = time.perf_counter()
    for _ in range(repeat):
        fn(*args)
    return (time.perf_counter() - t0) / repeat


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--sizes", default="2x2,4x4,8x8,16x16,32x8")
    parser.add_argument("--repeat", type=int, default=200)
    opts = parser.parse_args()
    sizes = [tuple(int(v) for v in s.split("x")) for s in opts.sizes.split(",")]

    rng = np.random.default_rng(0)
    kappa = 0.7 + 0.3j
    print(f"{'size':>8} {'kernel':>9} {'numpy (us)':>12} {'cython (us)':>12} {'speedup':>8}")
    for n, d in sizes:
        A = rng.standard_normal((n, d)) + 1j * rng.standard_normal((n, d))
        B = rng.standard_normal((d, n)) + 1j * rng.standard_normal((d, n))
        for name, py_fn, cy_fn, args in (
            ("fill_s", _kernels_py.fill_s, getattr(_kernels_cy, "fill_s", None), (A, B, kappa)),
            ("fill_hat", _kernels_py.fill_hat, getattr(_kernels_cy, "fill_hat", None), (A, B, kappa, -1.0)),
        ):
            t_py = _bench(py_fn, args, opts.repeat)
            if cy_fn is None:
                print(f"{n}x{d:>4} {name:>9} {t_py * 1e6:12.1f} {'n/a':>12} {'n/a':>8}")
                continue
            t_cy = _bench(cy_fn, args, opts.repeat)
            err = np.max(np.abs(py_fn(*args) - cy_fn(*args)))
            assert err < 1e-12, f"kernel mismatch {err}"
            print(f"{n}x{d:>4} {name:>9} {t_py * 1e6:12.1f} {t_cy * 1e6:12.1f} {t_py / t_cy:8.2f}")


if __name__ == "__main__":
    main()
