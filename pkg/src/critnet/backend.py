"""Kernel backend selection: numba-jitted loops or pure-numpy fallbacks.

The hot kernels (graph generation, BFS, exploration steps) exist in two
variants.  By default the numba variant is used when numba imports cleanly;
set ``CRITNET_BACKEND=numpy`` to force the vectorised numpy fallback or
``CRITNET_BACKEND=numba`` to fail loudly if numba is unavailable.
"""

import os

_requested = os.environ.get("CRITNET_BACKEND", "auto").strip().lower()
if _requested not in ("auto", "numba", "numpy", ""):
    raise RuntimeError(f"CRITNET_BACKEND must be 'numba' or 'numpy', got {_requested!r}")

if _requested in ("auto", "", "numba"):
    try:
        import numba

        HAVE_NUMBA = True
    except ImportError:
        if _requested == "numba":
            raise
        HAVE_NUMBA = False
else:
    HAVE_NUMBA = False

USE_NUMBA = HAVE_NUMBA and _requested != "numpy"


def backend_name() -> str:
    return "numba" if USE_NUMBA else "numpy"


def njit(*args, **kwargs):
    """numba.njit with caching when the numba backend is active.

    Under the numpy backend the decorated function is returned unchanged so
    that kernels stay importable (they are then only used by tests that
    exercise scalar paths, or not at all).
    """
    kwargs.setdefault("cache", True)
    if USE_NUMBA:
        return numba.njit(*args, **kwargs)
    if args and callable(args[0]):
        return args[0]
    return lambda f: f


def set_threads(n: int) -> int:
    """Set the numba thread pool size; returns the effective count."""
    if n <= 0:
        n = os.cpu_count() or 1
    if USE_NUMBA:
        numba.set_num_threads(max(1, min(n, numba.config.NUMBA_NUM_THREADS)))
    return n
