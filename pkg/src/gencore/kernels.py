"""Kernel selection: the compiled extension when importable, else the Python fallback.

Set ``GENCORE_PURE_PYTHON=1`` before import to force the fallback.
"""

import os

from . import _kernels_py

rref_mod_python = _kernels_py.rref_mod

try:
    from ._kernels import rref_mod as rref_mod_compiled
except ImportError:  # extension not built
    rref_mod_compiled = None

if rref_mod_compiled is not None and os.environ.get("GENCORE_PURE_PYTHON", "") not in ("1", "true", "yes"):
    BACKEND = "cython"
    rref_mod = rref_mod_compiled
else:
    BACKEND = "python"
    rref_mod = rref_mod_python

__all__ = ["BACKEND", "rref_mod", "rref_mod_python", "rref_mod_compiled"]
