"""Kernel selection: compiled extension when importable, else pure Python.

Set ``VDGRAPH_PURE_PYTHON=1`` to force the fallback.
"""

import os

from . import _kernel_py

python_kernel = _kernel_py
compiled_kernel = None
try:
    from . import _kernel_c as compiled_kernel  # type: ignore[no-redef]
except ImportError:  # extension not built
    compiled_kernel = None

if compiled_kernel is not None and not os.environ.get("VDGRAPH_PURE_PYTHON"):
    kernel = compiled_kernel
    BACKEND = "cython"
else:
    kernel = python_kernel
    BACKEND = "python"
