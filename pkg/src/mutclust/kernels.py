"""Kernel backend selection.

The compiled ``_kernels`` extension is preferred when importable; the
numpy fallback in ``_kernels_py`` is used otherwise.  Setting the
environment variable ``MUTCLUST_PURE_PYTHON`` (to any non-empty value)
forces the fallback, which is handy for debugging and benchmarking.
"""

from __future__ import annotations

import os

from . import _kernels_py

if os.environ.get("MUTCLUST_PURE_PYTHON"):
    _impl = _kernels_py
    BACKEND = "python"
else:
    try:
        from . import _kernels as _impl  # type: ignore[no-redef]

        BACKEND = "compiled"
    except ImportError:
        _impl = _kernels_py
        BACKEND = "python"

mutual_adjacency = _impl.mutual_adjacency
lt_matvec = _impl.lt_matvec
lloyd_step = _impl.lloyd_step
csr_row_ids = _kernels_py.csr_row_ids
csr_matvec = _kernels_py.csr_matvec


def available_backends() -> dict:
    """Importable kernel implementations keyed by name."""
    backends = {"python": _kernels_py}
    try:
        from . import _kernels

        backends["compiled"] = _kernels
    except ImportError:
        pass
    return backends
