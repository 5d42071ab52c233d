"""Numba switch.

Set ``CYLWELL_DISABLE_NUMBA=1`` to run every kernel through its pure
Python/numpy path. The flag is read once, at import time.
"""

import os
import warnings

_FLAG = os.environ.get("CYLWELL_DISABLE_NUMBA", "").strip().lower()
_DISABLED = _FLAG in ("1", "true", "yes", "on")

try:
    if _DISABLED:
        raise ImportError("disabled by CYLWELL_DISABLE_NUMBA")
    from numba import njit as _numba_njit
    USE_NUMBA = True
except ImportError as exc:
    USE_NUMBA = False
    if not _DISABLED:
        warnings.warn(f"numba unavailable ({exc}); using the numpy fallback")


def njit(*args, **kwargs):
    """``numba.njit`` when enabled, otherwise a transparent decorator."""
    if USE_NUMBA:
        return _numba_njit(*args, **kwargs)
    if len(args) == 1 and callable(args[0]) and not kwargs:
        return args[0]

    def decorator(func):
        return func

    return decorator


def backend():
    return "numba" if USE_NUMBA else "numpy"
