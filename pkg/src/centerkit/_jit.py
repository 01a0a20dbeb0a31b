"""Select numba's ``njit`` or a no-op decorator.

Set ``CENTERKIT_DISABLE_NUMBA=1`` to run every kernel as plain Python/numpy.
Jitted functions keep the original source reachable via ``.py_func``.
"""
import os

DISABLED = os.environ.get("CENTERKIT_DISABLE_NUMBA", "").strip() not in ("", "0", "false", "False")

try:
    if DISABLED:
        raise ImportError
    from numba import njit as _njit

    HAS_NUMBA = True
except ImportError:
    HAS_NUMBA = False


def jit(func):
    if HAS_NUMBA:
        return _njit(cache=True, fastmath=False)(func)
    func.py_func = func
    return func
