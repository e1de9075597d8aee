"""Kernel selection: compiled Cython fills when available, NumPy otherwise.

Set ``PLIE_PURE_PYTHON=1`` to force the NumPy implementation.
"""

from __future__ import annotations

import os

from . import _kernels_py

_force_py = os.environ.get("PLIE_PURE_PYTHON", "") not in ("", "0")

if not _force_py:
    try:
        from . import _kernels_cy as _impl  # type: ignore[attr-defined]

        HAVE_COMPILED = True
    except ImportError:
        _impl = _kernels_py
        HAVE_COMPILED = False
else:
    _impl = _kernels_py
    HAVE_COMPILED = False

BACKEND = "cython" if HAVE_COMPILED else "numpy"

fill_s = _impl.fill_s
fill_hat = _impl.fill_hat
