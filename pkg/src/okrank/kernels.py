"""Kernel backend selection.

The compiled extension is used when it imports; setting OKRANK_PURE_PYTHON=1
forces the numpy fallback.  Either way, int64 overflow falls through to the
arbitrary-precision object path, so results never depend on the backend.
"""
from __future__ import annotations

import os

import numpy as np

from . import _pykernels

try:
    if os.environ.get("OKRANK_PURE_PYTHON"):
        raise ImportError("pure python requested")
    from . import _ckernels as _fast
    BACKEND = "cython"
except ImportError:
    _fast = _pykernels
    BACKEND = "python"


def available_backends() -> list[str]:
    names = ["python"]
    try:
        from . import _ckernels  # noqa: F401
        names.append("cython")
    except ImportError:
        pass
    return names


def _module(backend: str | None):
    if backend is None:
        return _fast
    if backend == "python":
        return _pykernels
    if backend == "cython":
        from . import _ckernels
        return _ckernels
    raise ValueError(f"unknown backend {backend!r}")


def conv3(a: np.ndarray, b: np.ndarray, length: int, backend: str | None = None) -> np.ndarray:
    """Truncated product of two (q, z, a) coefficient arrays, first `length` q-planes."""
    mod = _module(backend)
    if a.dtype != object and b.dtype != object:
        try:
            return mod.conv3(a, b, length)
        except OverflowError:
            pass
    return _pykernels.conv3(a.astype(object), b.astype(object), length)


def geom(s: np.ndarray, coef: int, dq: int, dz: int, da: int, backend: str | None = None) -> np.ndarray:
    """Divide by (1 - coef * q^dq z^dz a^da) inside the array's own box."""
    mod = _module(backend)
    if s.dtype != object:
        try:
            return mod.geom(s, coef, dq, dz, da)
        except OverflowError:
            pass
    return _pykernels.geom(s.astype(object), coef, dq, dz, da)
