"""Backend selection for the greedy inner loops.

Imports the compiled extension when present, otherwise the NumPy
implementation. Set SPARSEHULL_PURE_PYTHON=1 to force the fallback
(useful for benchmarking and debugging).
"""

from __future__ import annotations

import os

from . import _kernels_py

if os.environ.get("SPARSEHULL_PURE_PYTHON") == "1":
    _impl = _kernels_py
else:
    try:
        from . import _speedups as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _kernels_py

BACKEND = "compiled" if _impl is not _kernels_py else "python"

vector_norm = _impl.vector_norm
norming_direction = _impl.norming_direction
min_pairing = _impl.min_pairing
greedy_iterate_into = _impl.greedy_iterate_into
