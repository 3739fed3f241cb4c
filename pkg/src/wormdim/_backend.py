"""Kernel backend selection.

The compiled extension is used when present; the pure numpy fallback is
selected otherwise, or when WORMDIM_PURE_PYTHON=1 is set. Both backends
implement the same functions with bit-identical results.
"""

from __future__ import annotations

import os

_force_pure = os.environ.get("WORMDIM_PURE_PYTHON", "") not in ("", "0")

if _force_pure:
    from . import _fallback as kernels
else:
    try:
        from . import _speedups as kernels  # type: ignore[no-redef]
    except ImportError:
        from . import _fallback as kernels  # type: ignore[no-redef]

COMPILED: bool = kernels.COMPILED


def backend_name() -> str:
    return "compiled" if COMPILED else "pure-python"
