"""Numba switch for the hot kernels.

Every hot kernel exists twice: a loop version compiled with numba and a
vectorized pure-numpy version.  ``USE_NUMBA`` picks which one the public API
dispatches to.  Set ``CEVIAN_DISABLE_NUMBA=1`` to force the numpy paths; they
are also used when numba is not importable.
"""

import os

try:
    import numba
except ImportError:  # pragma: no cover
    numba = None

HAVE_NUMBA = numba is not None

_FLAG = os.environ.get("CEVIAN_DISABLE_NUMBA", "").strip().lower()
USE_NUMBA = HAVE_NUMBA and _FLAG not in ("1", "true", "yes", "on")


def njit(*args, **kws):
    """numba.njit with cache and nogil on; returns the plain function without numba."""
    if not HAVE_NUMBA:
        if len(args) == 1 and callable(args[0]) and not kws:
            return args[0]
        return lambda f: f
    kws.setdefault("cache", True)
    kws.setdefault("nogil", True)
    return numba.njit(*args, **kws)


def backend_name():
    return "numba" if USE_NUMBA else "numpy"
