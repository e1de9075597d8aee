# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled fills for the hot bracket-matrix kernels.

Semantics match ``plie._kernels_py`` exactly; ``plie.kernels`` prefers this
module when it has been built.
"""

import numpy as np

cimport numpy as cnp

cnp.import_array()


cdef inline double _sgn(Py_ssize_t x) noexcept:
    return 1.0 if x > 0 else (-1.0 if x < 0 else 0.0)


def fill_s(A, B, kappa):
    """Raw bracket matrix of the covariant bracket on S(n,d)."""
    cdef cnp.ndarray[cnp.complex128_t, ndim=2] Am = np.ascontiguousarray(A, dtype=np.complex128)
    cdef cnp.ndarray[cnp.complex128_t, ndim=2] Bm = np.ascontiguousarray(B, dtype=np.complex128)
    cdef Py_ssize_t n = Am.shape[0], d = Am.shape[1]
    cdef Py_ssize_t nd = n * d
    cdef cnp.ndarray[cnp.complex128_t, ndim=2] M = np.zeros((2 * nd, 2 * nd), dtype=np.complex128)
    cdef double complex kap = kappa
    cdef double complex half = 0.5 * kap
    cdef Py_ssize_t i, k, a, b, s, mu
    cdef double complex v, acc

    # suffix sums tail[a, b, i] = sum_{s > i} A[s, a] B[b, s]
    cdef cnp.ndarray[cnp.complex128_t, ndim=3] tail = np.zeros((d, d, n), dtype=np.complex128)
    for a in range(d):
        for b in range(d):
            acc = 0
            for s in range(n - 1, -1, -1):
                tail[a, b, s] = acc
                acc = acc + Am[s, a] * Bm[b, s]
    # prefix sums head[i, k, a] = sum_{mu < a} A[i, mu] B[mu, k]
    cdef cnp.ndarray[cnp.complex128_t, ndim=3] head = np.zeros((n, n, d), dtype=np.complex128)
    for i in range(n):
        for k in range(n):
            acc = 0
            for a in range(d):
                head[i, k, a] = acc
                acc = acc + Am[i, a] * Bm[a, k]

    for i in range(n):
        for a in range(d):
            for k in range(n):
                for b in range(d):
                    # {A_i^a, A_k^b}
                    M[i * d + a, k * d + b] = half * (_sgn(i - k) - _sgn(a - b)) * Am[k, a] * Am[i, b]
                    # {B_i^a, B_k^b} at rows/cols (a,i), (b,k)
                    M[nd + a * n + i, nd + b * n + k] = -half * (_sgn(i - k) - _sgn(a - b)) * Bm[a, k] * Bm[b, i]
                    # {A_i^a, B_k^b} at (i,a), (b,k)
                    v = 0
                    if i == k:
                        v = v + half * Am[i, a] * Bm[b, i] + kap * tail[a, b, i]
                    if a == b:
                        v = v + half * Am[i, a] * Bm[a, k] + kap * head[i, k, a]
                        if i == k:
                            v = v + kap
                    M[i * d + a, nd + b * n + k] = v
    M[nd:, :nd] = -M[:nd, nd:].T
    return M


def fill_hat(A, B, kappa, cross_const):
    """Raw bracket matrix shared by the oscillator-type brackets on S(n,d)."""
    cdef cnp.ndarray[cnp.complex128_t, ndim=2] Am = np.ascontiguousarray(A, dtype=np.complex128)
    cdef cnp.ndarray[cnp.complex128_t, ndim=2] Bm = np.ascontiguousarray(B, dtype=np.complex128)
    cdef Py_ssize_t n = Am.shape[0], d = Am.shape[1]
    cdef Py_ssize_t nd = n * d
    cdef cnp.ndarray[cnp.complex128_t, ndim=2] M = np.zeros((2 * nd, 2 * nd), dtype=np.complex128)
    cdef double complex kap = kappa
    cdef double complex cc = cross_const
    cdef double complex half = 0.5 * kap
    cdef Py_ssize_t i, k, a, b, s, mu
    cdef double complex v, acc

    cdef cnp.ndarray[cnp.complex128_t, ndim=3] tail = np.zeros((d, d, n), dtype=np.complex128)
    for a in range(d):
        for b in range(d):
            acc = 0
            for s in range(n - 1, -1, -1):
                tail[a, b, s] = acc
                acc = acc + Am[s, a] * Bm[b, s]
    # suffix sums over the column index: tail_mu[i, k, a] = sum_{mu > a} A[i, mu] B[mu, k]
    cdef cnp.ndarray[cnp.complex128_t, ndim=3] tail_mu = np.zeros((n, n, d), dtype=np.complex128)
    for i in range(n):
        for k in range(n):
            acc = 0
            for a in range(d - 1, -1, -1):
                tail_mu[i, k, a] = acc
                acc = acc + Am[i, a] * Bm[a, k]

    for i in range(n):
        for a in range(d):
            for k in range(n):
                for b in range(d):
                    M[i * d + a, k * d + b] = half * (-_sgn(i - k) - _sgn(a - b)) * Am[k, a] * Am[i, b]
                    M[nd + a * n + i, nd + b * n + k] = half * (_sgn(i - k) + _sgn(a - b)) * Bm[a, k] * Bm[b, i]
                    v = 0
                    if i == k:
                        v = v - half * Am[i, a] * Bm[b, i] - kap * tail[a, b, i]
                    if a == b:
                        v = v - half * Am[i, a] * Bm[a, k] - kap * tail_mu[i, k, a]
                        if i == k:
                            v = v + cc
                    M[i * d + a, nd + b * n + k] = v
    M[nd:, :nd] = -M[:nd, nd:].T
    return M
