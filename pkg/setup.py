"""Build script: compiles the optional kernel extension when Cython is available.

The package is fully functional without the extension; `padic_skolem._kernels`
falls back to the pure-Python implementations at import time.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    extensions = cythonize(
        [
            Extension(
                "padic_skolem._kernels._speedups",
                ["src/padic_skolem/_kernels/_speedups.pyx"],
                optional=True,
            )
        ],
        compiler_directives={"language_level": 3},
    )
except ImportError:
    extensions = []

setup(ext_modules=extensions)
