"""Pure NumPy implementations of the hot bracket-matrix kernels.

These fill the raw (unsymmetrized) coordinate-bracket matrices for the
brackets on S(n,d).  The compiled Cython module `_kernels_cy` provides the
same functions; `plie.kernels` selects one implementation at import time.
"""

from __future__ import annotations

import numpy as np


def _sign_grid(m: int) -> np.ndarray:
    r = np.arange(m)
    return np.sign(np.subtract.outer(r, r)).astype(float)


def _assemble(AA, BB, AB, n: int, d: int) -> np.ndarray:
    nd = n * d
    M = np.zeros((2 * nd, 2 * nd), dtype=complex)
    M[:nd, :nd] = AA.reshape(nd, nd)
    M[nd:, nd:] = BB.reshape(nd, nd)
    ABf = AB.reshape(nd, nd)
    M[:nd, nd:] = ABf
    M[nd:, :nd] = -ABf.T
    return M


def fill_s(A: np.ndarray, B: np.ndarray, kappa: complex) -> np.ndarray:
    """Raw bracket matrix of the covariant bracket on S(n,d).

    Coordinates: A(i,alpha) row-major, then B(alpha,i) row-major.
    """
    n, d = A.shape
    Si = _sign_grid(n)
    Sa = _sign_grid(d)
    half = 0.5 * kappa

    # {A_i^a, A_k^b} = (kappa/2)(sgn(i-k) - sgn(a-b)) A_k^a A_i^b
    coeff = Si[:, None, :, None] - Sa[None, :, None, :]
    AA = half * coeff * A.T[None, :, :, None] * A[:, None, None, :]

    # {B_i^a, B_k^b} = -(kappa/2)(sgn(i-k) - sgn(a-b)) B_k^a B_i^b,  B_i^a = B[a,i]
    coeffB = Si[None, :, None, :] - Sa[:, None, :, None]
    BB = -half * coeffB * B[:, None, None, :] * B.T[None, :, :, None]

    # {A_i^a, B_k^b}, axes (i, a, b, k):
    #   delta_ik [ (k/2) A_i^a B_i^b + k sum_{s>i} A_s^a B_s^b ]
    # + delta_ab [ (k/2) A_i^a B_k^a + k sum_{mu<a} A_i^mu B_k^mu ]
    # + k delta_ab delta_ik
    eye_n = np.eye(n)
    eye_d = np.eye(d)
    diag_ik = np.einsum("ia,bi->iab", A, B)
    sb = np.einsum("sa,bs->abs", A, B)
    tail = np.flip(np.cumsum(np.flip(sb, axis=2), axis=2), axis=2) - sb
    im = np.einsum("im,mk->ikm", A, B)
    head = np.cumsum(im, axis=2) - im

    AB = (half * diag_ik + kappa * np.moveaxis(tail, 2, 0))[:, :, :, None] * eye_n[:, None, None, :]
    AB = AB + (
        half * np.einsum("ia,ak->iak", A, B) + kappa * head.transpose(0, 2, 1)
    )[:, :, None, :] * eye_d[None, :, :, None]
    AB = AB + kappa * eye_d[None, :, :, None] * eye_n[:, None, None, :]

    return _assemble(AA, BB, AB, n, d)


def fill_hat(A: np.ndarray, B: np.ndarray, kappa: complex, cross_const: complex) -> np.ndarray:
    """Raw bracket matrix shared by the oscillator-type brackets on S(n,d).

    ``cross_const`` is the coefficient of delta_{ab} delta_{ik} in the
    cross bracket: +kappa for the primed bracket, -1 for the plus bracket.
    """
    n, d = A.shape
    Si = _sign_grid(n)
    Sa = _sign_grid(d)
    half = 0.5 * kappa

    # {A_i^a, A_k^b} = (kappa/2)(sgn(k-i) - sgn(a-b)) A_k^a A_i^b
    coeff = -Si[:, None, :, None] - Sa[None, :, None, :]
    AA = half * coeff * A.T[None, :, :, None] * A[:, None, None, :]

    # {B_i^a, B_k^b} = (kappa/2)(sgn(i-k) + sgn(a-b)) B_k^a B_i^b
    coeffB = Si[None, :, None, :] + Sa[:, None, :, None]
    BB = half * coeffB * B[:, None, None, :] * B.T[None, :, :, None]

    # {A_i^a, B_k^b} = -delta_ik [ (k/2) A_i^a B_i^b + k sum_{s>i} A_s^a B_s^b ]
    #                - delta_ab [ (k/2) A_i^a B_k^a + k sum_{mu>a} A_i^mu B_k^mu ]
    #                + cross_const delta_ab delta_ik
    eye_n = np.eye(n)
    eye_d = np.eye(d)
    diag_ik = np.einsum("ia,bi->iab", A, B)
    sb = np.einsum("sa,bs->abs", A, B)
    tail = np.flip(np.cumsum(np.flip(sb, axis=2), axis=2), axis=2) - sb
    im = np.einsum("im,mk->ikm", A, B)
    tail_mu = np.flip(np.cumsum(np.flip(im, axis=2), axis=2), axis=2) - im

    AB = (-half * diag_ik - kappa * np.moveaxis(tail, 2, 0))[:, :, :, None] * eye_n[:, None, None, :]
    AB = AB + (
        -half * np.einsum("ia,ak->iak", A, B) - kappa * tail_mu.transpose(0, 2, 1)
    )[:, :, None, :] * eye_d[None, :, :, None]
    AB = AB + cross_const * eye_d[None, :, :, None] * eye_n[:, None, None, :]

    return _assemble(AA, BB, AB, n, d)
