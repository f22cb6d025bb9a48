"""Optional numba acceleration.

Set ``KP_DISABLE_NUMBA=1`` to run every kernel as plain Python/numpy. The
flag is read once at import time.
"""
import os

_disabled = os.environ.get("KP_DISABLE_NUMBA", "").strip().lower() in ("1", "true", "yes")

try:
    if _disabled:
        raise ImportError
    import numba

    HAVE_NUMBA = True
except ImportError:
    numba = None
    HAVE_NUMBA = False


def jit(func):
    """``numba.njit(cache=True, nogil=True)`` when available, identity otherwise."""
    if HAVE_NUMBA:
        return numba.njit(cache=True, nogil=True)(func)
    return func


def backend_name():
    return "numba" if HAVE_NUMBA else "numpy"
