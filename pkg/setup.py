"""Build script: compiles the optional bitset kernel extension.

The package works without the extension (a pure-Python kernel is selected at
import time), so any failure to cythonize or compile downgrades the install
instead of breaking it. Set IDXMINER_NO_EXT=1 to skip the extension build.
"""

import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("IDXMINER_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "idxminer.kernels._core",
                    ["src/idxminer/kernels/_core.pyx"],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
