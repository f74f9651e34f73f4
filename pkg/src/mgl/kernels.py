"""Kernel selection: compiled ``_kernels`` when importable, else ``_fallback``.

Set ``MGL_PURE_PYTHON=1`` to force the fallback.
"""
from __future__ import annotations

import os

from . import _fallback

BACKEND = "python"
hull_dp_float = _fallback.hull_dp_float
window_discrepancy = _fallback.window_discrepancy

if os.environ.get("MGL_PURE_PYTHON") != "1":
    try:
        from . import _kernels
    except ImportError:  # extension not built
        pass
    else:
        BACKEND = "cython"
        hull_dp_float = _kernels.hull_dp_float
        window_discrepancy = _kernels.window_discrepancy


def thread_count() -> int:
    """Worker cap from ``MGL_THREADS`` (default 1)."""
    raw = os.environ.get("MGL_THREADS", "1")
    try:
        n = int(raw)
    except ValueError:
        raise ValueError(f"MGL_THREADS must be a positive integer, got {raw!r}") from None
    if n < 1:
        raise ValueError(f"MGL_THREADS must be a positive integer, got {raw!r}")
    return n
