"""Kernel backend selection.

The compiled Cython core is used when available; otherwise the pure-Python
fallback. Set ``VMHMC_BACKEND=python`` (or ``cython``) to force a choice.
"""

import os

_requested = os.environ.get("VMHMC_BACKEND", "").strip().lower()

if _requested in ("", "cython", "compiled"):
    try:
        from vmhmc import _kernels as kernels

        BACKEND = "cython"
    except ImportError:
        if _requested:
            raise
        from vmhmc import _kernels_py as kernels

        BACKEND = "python"
elif _requested == "python":
    from vmhmc import _kernels_py as kernels

    BACKEND = "python"
else:
    raise ImportError(
        f"unknown VMHMC_BACKEND value {_requested!r}; use 'cython' or 'python'"
    )
