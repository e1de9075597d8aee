"""Coordinate charts: flat indexing of matrix entries for each phase space.

Every bracket evaluator works on a flat complex coordinate vector; the
functions here translate between structured points and those vectors.
Orderings (all row-major, 1-based in labels):

* ``S(n,d)``       -- A(i,alpha) for i=1..n, alpha=1..d, then B(alpha,i).
* ``Sprod(n,d)``   -- per copy alpha: a^alpha_1..n then b^alpha_1..n.
* ``GL(l)``        -- g(i,j).
* ``D(l)``         -- u entries then v entries.
* ``GLstar(l)``    -- strict upper of h_+, diagonal of h_+, strict lower of
                      h_-; the diagonal of h_- is dependent, (h_-)_jj = 1/(h_+)_jj.
* ``C2n(n)``       -- a_1..n then b_1..n (also used for the real Zakrzewski
                      chart with u and u-bar).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .points import DualPair, SPoint, SpinPoint, SpinTuple

__all__ = [
    "Chart",
    "s_chart",
    "sprod_chart",
    "gl_chart",
    "double_chart",
    "glstar_chart",
    "c2n_chart",
    "pack_spoint",
    "unpack_spoint",
    "pack_tuple",
    "unpack_tuple",
    "pack_gl",
    "unpack_gl",
    "pack_double",
    "unpack_double",
    "pack_dual",
    "unpack_dual",
    "pack_spin",
    "unpack_spin",
    "glstar_free_indices",
]


@dataclass(frozen=True)
class Chart:
    space: str
    dim: int
    labels: tuple


def s_chart(n: int, d: int) -> Chart:
    labels = tuple(f"A({i},{a})" for i in range(1, n + 1) for a in range(1, d + 1))
    labels += tuple(f"B({a},{i})" for a in range(1, d + 1) for i in range(1, n + 1))
    return Chart("S(n,d)", 2 * n * d, labels)


def sprod_chart(n: int, d: int) -> Chart:
    labels = []
    for a in range(1, d + 1):
        labels += [f"a{a}({i})" for i in range(1, n + 1)]
        labels += [f"b{a}({i})" for i in range(1, n + 1)]
    return Chart("Sprod(n,d)", 2 * n * d, tuple(labels))


def gl_chart(ell: int) -> Chart:
    labels = tuple(f"g({i},{j})" for i in range(1, ell + 1) for j in range(1, ell + 1))
    return Chart("GL(l)", ell * ell, labels)


def double_chart(ell: int) -> Chart:
    labels = tuple(f"u({i},{j})" for i in range(1, ell + 1) for j in range(1, ell + 1))
    labels += tuple(f"v({i},{j})" for i in range(1, ell + 1) for j in range(1, ell + 1))
    return Chart("D(l)", 2 * ell * ell, labels)


def glstar_chart(ell: int) -> Chart:
    labels = [f"h+({i},{j})" for i in range(1, ell + 1) for j in range(i + 1, ell + 1)]
    labels += [f"h+({j},{j})" for j in range(1, ell + 1)]
    labels += [f"h-({i},{j})" for i in range(2, ell + 1) for j in range(1, i)]
    return Chart("GLstar(l)", ell * ell, tuple(labels))


def c2n_chart(n: int) -> Chart:
    labels = tuple(f"a({i})" for i in range(1, n + 1)) + tuple(f"b({i})" for i in range(1, n + 1))
    return Chart("C2n(n)", 2 * n, labels)


# packing ------------------------------------------------------------------


def pack_spoint(p: SPoint) -> np.ndarray:
    return np.concatenate([p.A.ravel(), p.B.ravel()])


def unpack_spoint(x: np.ndarray, n: int, d: int) -> SPoint:
    x = np.asarray(x, dtype=complex)
    return SPoint(x[: n * d].reshape(n, d), x[n * d :].reshape(d, n))


def pack_tuple(t: SpinTuple) -> np.ndarray:
    return np.concatenate([np.concatenate([s.a, s.b]) for s in t])


def unpack_tuple(x: np.ndarray, n: int, d: int) -> SpinTuple:
    x = np.asarray(x, dtype=complex)
    spins = []
    for a in range(d):
        blk = x[2 * n * a : 2 * n * (a + 1)]
        spins.append(SpinPoint(blk[:n], blk[n:]))
    return SpinTuple(spins)


def pack_spin(s: SpinPoint) -> np.ndarray:
    return np.concatenate([s.a, s.b])


def unpack_spin(x: np.ndarray, n: int) -> SpinPoint:
    x = np.asarray(x, dtype=complex)
    return SpinPoint(x[:n], x[n:])


def pack_gl(g: np.ndarray) -> np.ndarray:
    return np.asarray(g, dtype=complex).ravel()


def unpack_gl(x: np.ndarray, ell: int) -> np.ndarray:
    return np.asarray(x, dtype=complex).reshape(ell, ell)


def pack_double(u: np.ndarray, v: np.ndarray) -> np.ndarray:
    return np.concatenate([np.asarray(u, dtype=complex).ravel(), np.asarray(v, dtype=complex).ravel()])


def unpack_double(x: np.ndarray, ell: int):
    x = np.asarray(x, dtype=complex)
    return x[: ell * ell].reshape(ell, ell), x[ell * ell :].reshape(ell, ell)


def glstar_free_indices(ell: int) -> np.ndarray:
    """Positions of the GLstar free coordinates inside the D(l) chart."""
    idx = [i * ell + j for i in range(ell) for j in range(i + 1, ell)]
    idx += [j * ell + j for j in range(ell)]
    idx += [ell * ell + i * ell + j for i in range(1, ell) for j in range(i)]
    return np.array(idx, dtype=int)


def pack_dual(pair: DualPair) -> np.ndarray:
    full = pack_double(pair.hplus, pair.hminus)
    return full[glstar_free_indices(pair.ell)]


def unpack_dual(x: np.ndarray, ell: int) -> DualPair:
    x = np.asarray(x, dtype=complex)
    n_up = ell * (ell - 1) // 2
    hp = np.zeros((ell, ell), dtype=complex)
    hm = np.zeros((ell, ell), dtype=complex)
    k = 0
    for i in range(ell):
        for j in range(i + 1, ell):
            hp[i, j] = x[k]
            k += 1
    diag = x[n_up : n_up + ell]
    if np.any(diag == 0):
        raise ValueError("h_+ diagonal must be invertible")
    hp[np.diag_indices(ell)] = diag
    hm[np.diag_indices(ell)] = 1.0 / diag
    k = n_up + ell
    for i in range(1, ell):
        for j in range(i):
            hm[i, j] = x[k]
            k += 1
    return DualPair(hp, hm)
