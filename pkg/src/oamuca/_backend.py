"""Kernel backend selection.

Hot loops exist twice: a numba ``@njit`` version and a pure-numpy version.
Set ``OAMUCA_DISABLE_NUMBA=1`` (or run without numba installed) to force the
numpy path. The choice is made once, at import time.
"""
import os

_FLAG = os.environ.get("OAMUCA_DISABLE_NUMBA", "").strip().lower()

try:
    import numba  # noqa: F401

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False

USE_NUMBA = HAVE_NUMBA and _FLAG not in ("1", "true", "yes", "on")

if USE_NUMBA:
    from . import _kernels_numba as kernels
else:
    from . import _kernels_numpy as kernels

BACKEND = "numba" if USE_NUMBA else "numpy"

__all__ = ["BACKEND", "HAVE_NUMBA", "USE_NUMBA", "kernels"]
