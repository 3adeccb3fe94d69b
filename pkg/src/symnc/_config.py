"""Runtime switches.

Set ``SYMNC_DISABLE_NUMBA=1`` to force the pure-numpy kernels (useful for
debugging and for benchmarking the two paths against each other).
"""
import os

_flag = os.environ.get("SYMNC_DISABLE_NUMBA", "").strip().lower()

try:
    import numba  # noqa: F401

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    HAVE_NUMBA = False

USE_NUMBA = HAVE_NUMBA and _flag not in ("1", "true", "yes", "on")
