"""Hot-kernel dispatch.

The compiled ``_kernels`` extension is used when it imports; otherwise the
numpy fallback in ``_kernels_py``. Setting ``BF_PURE_PYTHON=1`` forces the
fallback.
"""

import os

from . import _kernels_py

if os.environ.get("BF_PURE_PYTHON", "") not in ("", "0"):
    _impl = _kernels_py
    BACKEND = "python"
else:
    try:
        from . import _kernels as _impl

        BACKEND = "cython"
    except ImportError:  # extension not built
        _impl = _kernels_py
        BACKEND = "python"

pivoted_qr = _impl.pivoted_qr
hessenberg = _impl.hessenberg
hessenberg_eigvals = _impl.hessenberg_eigvals
winding_number = _impl.winding_number


def backends():
    """Return ``{name: module}`` for every importable backend."""
    found = {"python": _kernels_py}
    try:
        from . import _kernels

        found["cython"] = _kernels
    except ImportError:
        pass
    return found
