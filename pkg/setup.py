"""Build script for the compiled kernel extension.

The package works without the extension (a numpy fallback is selected at
import time), but the compiled kernels are noticeably faster for the small
vectors the solver churns through.
"""
from setuptools import Extension, setup
from Cython.Build import cythonize

extensions = [
    Extension("ncgkit._kernels", ["src/ncgkit/_kernels.pyx"]),
]

setup(ext_modules=cythonize(extensions, language_level="3"))
