"""Backend selection for the numeric kernels.

Numba is used when importable unless ``INTERDIST_DISABLE_NUMBA`` is set to a truthy
value, in which case (or when numba is missing) the pure-numpy paths run instead.
"""

import os

_flag = os.environ.get("INTERDIST_DISABLE_NUMBA", "").strip().lower()
DISABLED = _flag not in ("", "0", "false", "no")

try:
    if DISABLED:
        raise ImportError
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised via the env flag
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        if len(args) == 1 and callable(args[0]) and not kwargs:
            return args[0]
        return lambda f: f


def backend() -> str:
    return "numba" if HAVE_NUMBA else "numpy"
