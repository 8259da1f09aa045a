"""Build script for the optional compiled kernel extension.

The package works without it (a pure-numpy fallback is selected at
import), so the extension is marked optional: a missing C toolchain
degrades performance, not functionality.

    python setup.py build_ext --inplace
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "qcorr._kernels",
                ["src/qcorr/_kernels.pyx"],
                extra_compile_args=["-O3"],
                optional=True,
            )
        ],
        compiler_directives={
            "language_level": "3",
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
        },
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
