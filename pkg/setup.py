"""Build script: compiles the optional GMP row-reduction kernel.

The extension is marked optional; when GMP headers or a compiler are
missing the package installs anyway and falls back to the pure-Python
implementation in movingcurves._linalg.pyref.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

ext_modules = []
if cythonize is not None:
    ext = Extension(
        "movingcurves._linalg._core",
        ["src/movingcurves/_linalg/_core.pyx"],
        libraries=["gmp"],
        extra_compile_args=["-O2"],
    )
    ext.optional = True
    ext_modules = cythonize([ext], language_level=3)

setup(ext_modules=ext_modules)
