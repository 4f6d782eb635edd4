"""Hot kernels for exhaustive searches and sweeps over finite rings.

The compiled extension ``_ckernels`` is used when it has been built;
otherwise the pure-Python ``_pykernels`` is selected.  Setting the
environment variable ``RIORDANLAB_PURE=1`` forces the fallback.
"""

from __future__ import annotations

import os
from functools import lru_cache

from . import _pykernels

if os.environ.get("RIORDANLAB_PURE", "") not in ("", "0"):
    _impl = _pykernels
else:
    try:
        from . import _ckernels as _impl
    except ImportError:
        _impl = _pykernels

BACKEND = "cython" if _impl is not _pykernels else "python"
FiniteRingKernel = _impl.FiniteRingKernel

__all__ = ["BACKEND", "FiniteRingKernel", "kernel_for", "available_backends"]


def ring_tables(ring) -> tuple[int, list[int], list[int]]:
    """Flat add/mul tables of a finite ring whose raw values are the codes
    0..size-1."""
    s = ring.size
    add = [ring.add(a, b) for a in range(s) for b in range(s)]
    mul = [ring.mul(a, b) for a in range(s) for b in range(s)]
    return s, add, mul


@lru_cache(maxsize=None)
def kernel_for(ring, backend: str | None = None):
    """A kernel for ``ring`` (cached per ring and backend)."""
    cls = FiniteRingKernel
    if backend is not None:
        cls = available_backends()[backend]
    s, add, mul = ring_tables(ring)
    return cls(s, add, mul, ring.zero, ring.one)


def available_backends() -> dict:
    out = {"python": _pykernels.FiniteRingKernel}
    try:
        from . import _ckernels

        out["cython"] = _ckernels.FiniteRingKernel
    except ImportError:
        pass
    return out
