"""Kernel backend selection.

Two interchangeable implementations of the numerical hot paths exist:

* ``numba_backend``: loops compiled with numba.njit (cache=True, no fastmath)
* ``numpy_backend``: vectorized numpy, used as the fallback

The environment variable STEINMINK_BACKEND picks one: ``numba``, ``numpy``
or ``auto`` (default; numba when importable, numpy otherwise).  The choice
is made once at import time so a process always runs a single backend.
"""

from __future__ import annotations

import os

_REQUESTED = os.environ.get("STEINMINK_BACKEND", "auto").strip().lower()
if _REQUESTED not in ("auto", "numba", "numpy"):
    raise ValueError(
        f"STEINMINK_BACKEND must be 'auto', 'numba' or 'numpy', got {_REQUESTED!r}"
    )

if _REQUESTED in ("auto", "numba"):
    try:
        from . import numba_backend as _impl

        backend_name = "numba"
    except ImportError:
        if _REQUESTED == "numba":
            raise
        from . import numpy_backend as _impl

        backend_name = "numpy"
else:
    from . import numpy_backend as _impl

    backend_name = "numpy"


def get_backend(name: str):
    """Return a backend module by name, independent of the active choice.

    Used by the parity tests and the benchmark script; normal code should
    call the module-level functions below.
    """
    if name == "numba":
        from . import numba_backend

        return numba_backend
    if name == "numpy":
        from . import numpy_backend

        return numpy_backend
    raise ValueError(f"unknown backend {name!r}")


FORM_CROSS = _impl.FORM_CROSS
FORM_SIMPLEX = _impl.FORM_SIMPLEX
angle_integrand = _impl.angle_integrand
distances_ball = _impl.distances_ball
distances_cube = _impl.distances_cube
distances_cross = _impl.distances_cross
distances_simplex = _impl.distances_simplex
polyval_ascending = _impl.polyval_ascending
horner_dd = _impl.horner_dd
aberth_iterate = _impl.aberth_iterate

__all__ = [
    "backend_name",
    "get_backend",
    "FORM_CROSS",
    "FORM_SIMPLEX",
    "angle_integrand",
    "distances_ball",
    "distances_cube",
    "distances_cross",
    "distances_simplex",
    "polyval_ascending",
    "horner_dd",
    "aberth_iterate",
]
