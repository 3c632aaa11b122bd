"""Build hooks: compile the optional search kernel extension when Cython is present.

The package is fully functional without the extension; ajtkit.kernels falls back
to the pure-Python twin at import time.
"""

import os

from setuptools import setup

ext_modules = []
if os.environ.get("AJTKIT_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [
                Extension(
                    "ajtkit._kernels",
                    sources=["src/ajtkit/_kernels.pyx"],
                )
            ],
            language_level=3,
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
