"""Builds the optional compiled refinement kernel.

Without Cython or a C compiler the package installs pure Python and
``vdgraph.auteng`` falls back to ``_kernel_py`` at import time.
"""

import os

from setuptools import setup

ext_modules = []
if not os.environ.get("VDGRAPH_NO_EXT"):
    try:
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [Extension("vdgraph.auteng._kernel_c", ["src/vdgraph/auteng/_kernel_c.pyx"], extra_compile_args=["-O3"])],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
