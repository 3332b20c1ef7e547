"""Backend selection for the integer echelon kernels.

The compiled extension is used when it imports; ``HOMALT_PURE_PYTHON=1``
forces the pure-Python implementation.
"""

import os

from . import _kernels_py

if os.environ.get("HOMALT_PURE_PYTHON", "") not in ("", "0"):
    _impl = _kernels_py
else:
    try:
        from . import _kernels as _impl
    except ImportError:
        _impl = _kernels_py

BACKEND = _impl.BACKEND
echelon_reduce = _impl.echelon_reduce
echelon_insert = _impl.echelon_insert
apply_sparse = _impl.apply_sparse
spin = _impl.spin
trace_pairing = _impl.trace_pairing


def available_backends():
    """Map backend name to module for every importable implementation."""
    found = {"python": _kernels_py}
    try:
        from . import _kernels
    except ImportError:
        pass
    else:
        found["cython"] = _kernels
    return found
