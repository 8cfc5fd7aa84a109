"""Kernel compilation switch.

Hot numerical kernels are written once in numpy-compatible form and compiled
with numba when it is importable.  Setting the environment variable
``WIRTINGER_NO_NUMBA=1`` (any value other than empty or "0") selects the pure
numpy fallback: the same source runs uncompiled.  Results are identical on
both paths; only speed differs.
"""

import os

DISABLE_ENV = "WIRTINGER_NO_NUMBA"


def _detect() -> bool:
    if os.environ.get(DISABLE_ENV, "").strip() not in ("", "0"):
        return False
    try:
        import numba  # noqa: F401
    except ImportError:
        return False
    return True


NUMBA_ENABLED = _detect()

if NUMBA_ENABLED:
    import numba

    def maybe_jit(fn):
        return numba.njit(cache=True)(fn)
else:

    def maybe_jit(fn):
        return fn
