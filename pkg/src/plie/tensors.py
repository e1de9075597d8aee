"""Dense complex matrices, 4-leg tensors and the constant structure tensors.

A :class:`Tensor4` stores a quantity ``T`` with two matrix legs: the entry
``T[i, j, k, l]`` pairs the leg-1 index pair ``(i, j)`` with the leg-2 index
pair ``(k, l)``.  Products of the form ``M_1 T``, ``T M_1``, ``M_2 T`` and
``T M_2`` (matrix acting on one leg only) are the workhorses used to spell
out tensor-notation bracket identities.
"""

from __future__ import annotations

import numpy as np

__all__ = [
    "Tensor4",
    "as_cmat",
    "elementary",
    "dj_r",
    "r_pm",
    "casimir",
    "c12",
    "eta",
]


def as_cmat(entries, rows: int | None = None, cols: int | None = None) -> np.ndarray:
    """Validate and return a complex 2-D array (finite entries required)."""
    m = np.asarray(entries, dtype=complex)
    if m.ndim != 2:
        raise ValueError(f"expected a matrix, got ndim={m.ndim}")
    if rows is not None and m.shape != (rows, cols):
        raise ValueError(f"expected shape {(rows, cols)}, got {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix has non-finite entries")
    return m


class Tensor4:
    """A 4-index complex tensor with dims ``(p, q, r, s)``.

    Leg 1 carries the index pair ``(p, q)`` and leg 2 the pair ``(r, s)``.
    """

    __slots__ = ("array",)

    def __init__(self, array):
        a = np.asarray(array, dtype=complex)
        if a.ndim != 4:
            raise ValueError("Tensor4 requires a 4-index array")
        self.array = a

    @property
    def dims(self) -> tuple[int, int, int, int]:
        return self.array.shape

    @classmethod
    def zeros(cls, p: int, q: int, r: int, s: int) -> "Tensor4":
        return cls(np.zeros((p, q, r, s), dtype=complex))

    def flatten(self) -> np.ndarray:
        """Flatten to a (p*r) x (q*s) matrix, leg-1 index major."""
        p, q, r, s = self.dims
        return self.array.transpose(0, 2, 1, 3).reshape(p * r, q * s)

    @classmethod
    def unflatten(cls, mat: np.ndarray, dims: tuple[int, int, int, int]) -> "Tensor4":
        p, q, r, s = dims
        return cls(np.asarray(mat, dtype=complex).reshape(p, r, q, s).transpose(0, 2, 1, 3))

    def swap_legs(self) -> "Tensor4":
        """Exchange leg 1 and leg 2."""
        return Tensor4(self.array.transpose(2, 3, 0, 1))

    # matrix-on-one-leg products -------------------------------------------

    def lmul1(self, m) -> "Tensor4":
        """Left-multiply leg 1: (M T)[i,j,k,l] = sum_a M[i,a] T[a,j,k,l]."""
        return Tensor4(np.einsum("ia,ajkl->ijkl", np.asarray(m, dtype=complex), self.array))

    def rmul1(self, m) -> "Tensor4":
        """Right-multiply leg 1: (T M)[i,j,k,l] = sum_a T[i,a,k,l] M[a,j]."""
        return Tensor4(np.einsum("iakl,aj->ijkl", self.array, np.asarray(m, dtype=complex)))

    def lmul2(self, m) -> "Tensor4":
        """Left-multiply leg 2: (M T)[i,j,k,l] = sum_a M[k,a] T[i,j,a,l]."""
        return Tensor4(np.einsum("ka,ijal->ijkl", np.asarray(m, dtype=complex), self.array))

    def rmul2(self, m) -> "Tensor4":
        """Right-multiply leg 2: (T M)[i,j,k,l] = sum_a T[i,j,k,a] M[a,l]."""
        return Tensor4(np.einsum("ijka,al->ijkl", self.array, np.asarray(m, dtype=complex)))

    def __add__(self, other: "Tensor4") -> "Tensor4":
        return Tensor4(self.array + other.array)

    def __sub__(self, other: "Tensor4") -> "Tensor4":
        return Tensor4(self.array - other.array)

    def __mul__(self, scalar) -> "Tensor4":
        return Tensor4(self.array * scalar)

    __rmul__ = __mul__

    def __neg__(self) -> "Tensor4":
        return Tensor4(-self.array)


def elementary(ell: int, j: int, k: int) -> np.ndarray:
    """Elementary ell x ell matrix E_{jk} with 1-based indices."""
    if ell < 1:
        raise ValueError("size must be >= 1")
    if not (1 <= j <= ell and 1 <= k <= ell):
        raise IndexError(f"indices ({j},{k}) out of range for size {ell}")
    m = np.zeros((ell, ell), dtype=complex)
    m[j - 1, k - 1] = 1.0
    return m


def dj_r(ell: int) -> Tensor4:
    """Drinfeld-Jimbo r-matrix: (1/2) sum_{j<k} E_jk wedge E_kj.

    Entry [a,b,c,d] = (1/2) sgn(b-a) delta_{ad} delta_{bc}; exact halves.
    """
    if ell < 1:
        raise ValueError("size must be >= 1")
    t = np.zeros((ell, ell, ell, ell), dtype=complex)
    for a in range(ell):
        for b in range(ell):
            if a != b:
                t[a, b, b, a] = 0.5 * np.sign(b - a)
    return Tensor4(t)


def casimir(ell: int) -> Tensor4:
    """The flip tensor I^ell = sum_{j,k} E_jk (x) E_kj."""
    if ell < 1:
        raise ValueError("size must be >= 1")
    t = np.zeros((ell, ell, ell, ell), dtype=complex)
    for a in range(ell):
        for b in range(ell):
            t[a, b, b, a] = 1.0
    return Tensor4(t)


def r_pm(ell: int, sign: int) -> Tensor4:
    """r^ell +/- (1/2) I^ell for sign = +1 / -1."""
    if sign not in (+1, -1):
        raise ValueError("sign must be +1 or -1")
    return dj_r(ell) + (0.5 * sign) * casimir(ell)


def c12(n: int, d: int) -> Tensor4:
    """The rectangular pairing tensor with entry[i,a,a,i] = 1; dims (n,d,d,n)."""
    if n < 1 or d < 1:
        raise ValueError("sizes must be >= 1")
    t = np.zeros((n, d, d, n), dtype=complex)
    for i in range(n):
        for a in range(d):
            t[i, a, a, i] = 1.0
    return Tensor4(t)


def eta(ell: int) -> np.ndarray:
    """Anti-diagonal involution sum_i E_{i, ell+1-i}."""
    if ell < 1:
        raise ValueError("size must be >= 1")
    return np.fliplr(np.eye(ell, dtype=complex))
