"""Numba switch.

The hot kernels in :mod:`charsum.kernels` exist twice: a numba ``@njit``
loop version and a vectorised numpy version.  Setting the environment
variable ``CHARSUM_DISABLE_NUMBA=1`` (read once, at import) selects the
numpy path even when numba is installed.
"""

import os

_FLAG = os.environ.get("CHARSUM_DISABLE_NUMBA", "").strip().lower()
DISABLED = _FLAG in {"1", "true", "yes", "on"}

try:
    import numba  # noqa: F401
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False
    njit = None

USE_NUMBA = HAVE_NUMBA and not DISABLED


def jit(fn):
    """Compile ``fn`` with numba when available, otherwise return it unchanged."""
    if not HAVE_NUMBA:
        return fn
    return njit(cache=True, nogil=True)(fn)


def backend_name() -> str:
    return "numba" if USE_NUMBA else "numpy"
