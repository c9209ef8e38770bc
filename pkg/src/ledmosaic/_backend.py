"""Kernel backend selection and worker-thread control.

Two interchangeable kernel sets exist: numba-compiled loops (fast path) and
pure-numpy slicing (fallback).  The environment variable ``LEDMOSAIC_BACKEND``
picks one at import time (``numba``, ``numpy`` or ``auto``); ``set_backend``
overrides it at runtime, which the backend benchmark relies on.  Both
backends compute the same operations in the same order, so results agree to
floating-point rounding of the exponential.

``LEDMOSAIC_THREADS`` caps the numba worker pool; the numpy backend is
single-threaded regardless.
"""

from __future__ import annotations

import os
import warnings

BACKEND_ENV = "LEDMOSAIC_BACKEND"
THREADS_ENV = "LEDMOSAIC_THREADS"

_VALID = ("auto", "numba", "numpy")

_requested = os.environ.get(BACKEND_ENV, "auto").lower()
if _requested not in _VALID:
    warnings.warn(f"ignoring unknown {BACKEND_ENV}={_requested!r}; using 'auto'")
    _requested = "auto"

_resolved: str | None = None


def _numba_available() -> bool:
    try:
        import numba  # noqa: F401
    except ImportError:
        return False
    return True


def set_backend(name: str) -> None:
    """Force the kernel backend ('numba', 'numpy' or 'auto')."""
    global _requested, _resolved
    name = name.lower()
    if name not in _VALID:
        raise ValueError(f"backend must be one of {_VALID}, got {name!r}")
    if name == "numba" and not _numba_available():
        raise ImportError("numba backend requested but numba is not importable")
    _requested = name
    _resolved = None


def get_backend() -> str:
    """Resolved backend name, importing numba lazily on first use."""
    global _resolved
    if _resolved is None:
        if _requested == "numpy":
            _resolved = "numpy"
        elif _requested == "numba":
            _resolved = "numba"
        else:
            if _numba_available():
                _resolved = "numba"
            else:
                warnings.warn("numba is not importable; falling back to the "
                              "pure-numpy kernels (set LEDMOSAIC_BACKEND=numpy "
                              "to silence this)")
                _resolved = "numpy"
    return _resolved


def kernels():
    """Kernel module for the resolved backend."""
    if get_backend() == "numba":
        from . import _kernels_numba
        return _kernels_numba
    from . import _kernels_numpy
    return _kernels_numpy


def max_worker_threads() -> int:
    if get_backend() != "numba":
        return 1
    import numba
    return int(numba.config.NUMBA_NUM_THREADS)


def set_worker_threads(n: int) -> int:
    """Set the worker-thread count, clamped to what the backend allows.

    Returns the thread count actually in effect.  Results of every
    demosaicking operation are independent of this setting.
    """
    if n < 1:
        raise ValueError("thread count must be >= 1")
    if get_backend() != "numba":
        return 1
    import numba
    eff = min(int(n), int(numba.config.NUMBA_NUM_THREADS))
    numba.set_num_threads(eff)
    return eff


def current_worker_threads() -> int:
    if get_backend() != "numba":
        return 1
    import numba
    return int(numba.get_num_threads())


def apply_thread_env() -> int:
    """Honor the LEDMOSAIC_THREADS cap if present; returns threads in effect."""
    val = os.environ.get(THREADS_ENV)
    if val:
        try:
            return set_worker_threads(int(val))
        except ValueError:
            warnings.warn(f"ignoring invalid {THREADS_ENV}={val!r}")
    return current_worker_threads()
