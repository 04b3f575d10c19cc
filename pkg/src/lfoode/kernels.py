"""Kernel selection: the compiled extension when built, else pure Python.

Set ``LFOODE_PURE_PYTHON=1`` to force the fallback (used by the benchmark
and by the kernel-equivalence tests).
"""

import os

from . import _kernels_py

BACKEND = "python"

if os.environ.get("LFOODE_PURE_PYTHON") != "1":
    try:
        from . import _kernels as _impl

        BACKEND = "cython"
    except ImportError:  # extension not built
        _impl = _kernels_py
else:
    _impl = _kernels_py

mul2 = _impl.mul2
muln = _impl.muln
axpy = _impl.axpy
bareiss = _impl.bareiss
