"""Kernel selection: the compiled extension when importable, else pure Python.

Set ``GRAPHPROD_PURE=1`` to force the fallback.
"""
import os

from . import _pykernels

try:
    if os.environ.get("GRAPHPROD_PURE"):
        raise ImportError("pure mode requested")
    from . import _ckernels as _impl

    BACKEND = "cython"
except ImportError:
    _impl = _pykernels
    BACKEND = "python"

reduce_cyclic = _impl.reduce_cyclic

# C kernel limits: 64-bit vertex masks, payloads well inside int64
MAX_VERTICES = 64
MAX_PAYLOAD = 1 << 40
