"""Build script: compiles the optional C kernel extension when Cython is available.

The package is fully functional without the extension (a numpy/pure-Python
backend is selected at import time); set RMFLAB_NO_EXT=1 to skip compilation.
"""

import os

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("RMFLAB_NO_EXT"):
    try:
        from Cython.Build import cythonize

        ext = Extension(
            "rmflab._kernels._ckernels",
            ["src/rmflab/_kernels/_ckernels.pyx"],
            extra_compile_args=["-O3"],
        )
        ext_modules = cythonize([ext], compiler_directives={"language_level": "3"})
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
