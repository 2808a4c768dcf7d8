"""Build script: compiles the optional exact-elimination speedup module.

The package is pure Python plus one optional Cython extension. If Cython, a
C compiler, or the .pyx source is unavailable the build still succeeds and
the package falls back to the pure kernels at import time.
"""

import os

from setuptools import Extension, setup

PYX = os.path.join("src", "tensorforge", "_speedups.pyx")

try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    if os.path.exists(PYX):
        extensions = [Extension("tensorforge._speedups", [PYX])]
        ext_modules = cythonize(
            extensions, compiler_directives={"language_level": "3"}
        )
    else:
        ext_modules = []

setup(ext_modules=ext_modules)
