"""Build script for the optional compiled scoring kernel.

The package works without the extension (a pure-Python fallback is selected
at import time), so a failed compile must not break installation.
"""

import os

from setuptools import setup
from setuptools.extension import Extension

ext_modules = []
if os.environ.get("DELIBSUM_SKIP_EXT") != "1":
    try:
        from Cython.Build import cythonize

        ext = Extension(
            "delibsum.metrics._kernels",
            ["src/delibsum/metrics/_kernels.pyx"],
            extra_compile_args=["-O3"],
            optional=True,
        )
        ext_modules = cythonize([ext], compiler_directives={"language_level": "3"})
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
