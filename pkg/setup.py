"""Build script: compiles the optional Cython kernels.

The package is fully functional without the extension; the simulator
falls back to pure-Python kernels when `nvmio_lab._ckernels` is absent.
Set NVMIO_LAB_NO_EXT=1 to skip the extension build entirely.
"""

import os

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("NVMIO_LAB_NO_EXT"):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "nvmio_lab._ckernels",
                    ["src/nvmio_lab/_ckernels.pyx"],
                )
            ],
            language_level="3",
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
