"""Build script: compiles the optional Cython kernel extension.

The package works without the extension (a NumPy implementation is selected
at import time), so any build failure here degrades gracefully to a pure
Python install.
"""

from setuptools import Extension, setup


def _extensions():
    try:
        import numpy
        from Cython.Build import cythonize
    except ImportError:
        return []
    try:
        return cythonize(
            [
                Extension(
                    "plie._kernels_cy",
                    ["src/plie/_kernels_cy.pyx"],
                    include_dirs=[numpy.get_include()],
                    define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                )
            ],
            language_level=3,
        )
    except Exception:
        return []


setup(ext_modules=_extensions())
