"""Kernel selection.

The compiled ``_ckernels`` extension is used when it was built; otherwise
the pure-Python versions in ``_pykernels`` are used.  Setting the
environment variable ``STRANGEQ_PURE_PYTHON=1`` forces the fallback.
"""

import os

from . import _pykernels

if os.environ.get("STRANGEQ_PURE_PYTHON", "") not in ("", "0"):
    _impl = _pykernels
else:
    try:
        from . import _ckernels as _impl
    except ImportError:
        _impl = _pykernels

BACKEND = "compiled" if _impl is not _pykernels else "python"

conv_trunc = _impl.conv_trunc
inv_trunc = _impl.inv_trunc
poly_mulmod = _impl.poly_mulmod

__all__ = ["BACKEND", "conv_trunc", "inv_trunc", "poly_mulmod"]
