"""Phase-space point containers."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .tensors import as_cmat

__all__ = ["SPoint", "SpinPoint", "SpinTuple", "DualPair"]


@dataclass(frozen=True)
class SPoint:
    """A point (A, B) with A of shape (n, d) and B of shape (d, n)."""

    A: np.ndarray
    B: np.ndarray

    def __post_init__(self):
        A = as_cmat(self.A)
        B = as_cmat(self.B, A.shape[1], A.shape[0])
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "B", B)

    @property
    def n(self) -> int:
        return self.A.shape[0]

    @property
    def d(self) -> int:
        return self.A.shape[1]

    @classmethod
    def zero(cls, n: int, d: int) -> "SPoint":
        return cls(np.zeros((n, d)), np.zeros((d, n)))


@dataclass(frozen=True)
class SpinPoint:
    """A single spin copy: a column vector ``a`` and a row covector ``b``."""

    a: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.a, dtype=complex).reshape(-1)
        b = np.asarray(self.b, dtype=complex).reshape(-1)
        if a.shape != b.shape or a.size < 1:
            raise ValueError("a and b must be vectors of equal length >= 1")
        if not (np.all(np.isfinite(a)) and np.all(np.isfinite(b))):
            raise ValueError("non-finite entries")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @property
    def n(self) -> int:
        return self.a.size

    @classmethod
    def zero(cls, n: int) -> "SpinPoint":
        return cls(np.zeros(n), np.zeros(n))

    def as_spoint(self) -> SPoint:
        """View the spin copy as an element of S(n, 1)."""
        return SPoint(self.a[:, None], self.b[None, :])


class SpinTuple:
    """An ordered tuple of d spin copies of uniform size n."""

    __slots__ = ("spins",)

    def __init__(self, spins):
        spins = tuple(spins)
        if not spins:
            raise ValueError("need at least one spin copy")
        n = spins[0].n
        if any(s.n != n for s in spins):
            raise ValueError("all spin copies must share the same size")
        self.spins = spins

    @property
    def n(self) -> int:
        return self.spins[0].n

    @property
    def d(self) -> int:
        return len(self.spins)

    def __iter__(self):
        return iter(self.spins)

    def __getitem__(self, i):
        return self.spins[i]

    def __len__(self):
        return len(self.spins)

    @classmethod
    def zero(cls, n: int, d: int) -> "SpinTuple":
        return cls(SpinPoint.zero(n) for _ in range(d))


@dataclass(frozen=True)
class DualPair:
    """An element (h_+, h_-) of the dual group: triangular with reciprocal diagonals."""

    hplus: np.ndarray
    hminus: np.ndarray

    def __post_init__(self):
        hp = as_cmat(self.hplus)
        ell = hp.shape[0]
        hm = as_cmat(self.hminus, ell, ell)
        if hp.shape[0] != hp.shape[1]:
            raise ValueError("h_+ must be square")
        if np.any(np.tril(hp, -1) != 0):
            raise ValueError("h_+ must be upper triangular (exact zeros below)")
        if np.any(np.triu(hm, 1) != 0):
            raise ValueError("h_- must be lower triangular (exact zeros above)")
        dp, dm = np.diag(hp), np.diag(hm)
        if np.max(np.abs(dp * dm - 1.0)) > 1e-12 * max(1.0, np.max(np.abs(dp * dm))):
            raise ValueError("diagonals of h_+ and h_- must be reciprocal")
        object.__setattr__(self, "hplus", hp)
        object.__setattr__(self, "hminus", hm)

    @property
    def ell(self) -> int:
        return self.hplus.shape[0]

    @classmethod
    def identity(cls, ell: int) -> "DualPair":
        return cls(np.eye(ell, dtype=complex), np.eye(ell, dtype=complex))
