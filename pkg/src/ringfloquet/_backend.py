"""Pick the compiled kernels when available, else the pure-Python ones.

Set ``RINGFLOQUET_PURE_PYTHON=1`` to force the fallback (used by the
benchmark and by the test that checks both backends agree).
"""
from __future__ import annotations

import os

from . import _kernels_py

if os.environ.get("RINGFLOQUET_PURE_PYTHON", "") not in ("", "0"):
    kernels = _kernels_py
    BACKEND = "python"
else:
    try:
        from . import _kernels as kernels  # type: ignore[attr-defined]

        BACKEND = "cython"
    except ImportError:
        kernels = _kernels_py
        BACKEND = "python"


def thread_cap() -> int:
    """Worker count for internally parallel steps (``RINGFLOQUET_THREADS``)."""
    raw = os.environ.get("RINGFLOQUET_THREADS", "")
    try:
        n = int(raw)
    except ValueError:
        return 1
    return max(n, 1)
