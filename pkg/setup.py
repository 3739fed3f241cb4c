"""Build script: compiles the optional speedup extension.

The package works without the extension (a pure numpy fallback is selected
at import time); set WORMDIM_SKIP_EXT=1 to skip compilation entirely.
"""

import os

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    """Degrade to the pure-Python package when compilation fails."""

    def run(self):
        try:
            build_ext.run(self)
        except Exception as exc:  # missing compiler, broken toolchain
            print(f"WARNING: speedup extension not built ({exc}); "
                  "falling back to pure Python kernels")

    def build_extension(self, ext):
        try:
            build_ext.build_extension(self, ext)
        except Exception as exc:
            print(f"WARNING: {ext.name} failed to compile ({exc}); "
                  "falling back to pure Python kernels")


ext_modules = []
cmdclass = {}
if os.environ.get("WORMDIM_SKIP_EXT") != "1":
    try:
        import numpy
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "wormdim._speedups",
                    ["src/wormdim/_speedups.pyx"],
                    language="c++",
                    include_dirs=[numpy.get_include()],
                    define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                )
            ],
            language_level=3,
        )
        cmdclass = {"build_ext": optional_build_ext}
    except ImportError:
        print("WARNING: Cython or numpy unavailable; building pure Python only")

setup(ext_modules=ext_modules, cmdclass=cmdclass)
