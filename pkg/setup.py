"""Build script for the compiled kernel extension.

The extension is optional: if the build fails (no compiler, exotic
platform), the package installs anyway and falls back to the pure-Python
kernels at import time.  Set FIFO_ROUTES_NO_EXT=1 to skip the build.
"""

import os
import sys

from setuptools import setup
from setuptools.command.build_ext import build_ext
from setuptools.extension import Extension


class optional_build_ext(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:  # compiler missing entirely
            self._warn(exc)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            self._warn(exc)

    @staticmethod
    def _warn(exc):
        print(
            f"WARNING: building the fifo_routes._kernels extension failed"
            f" ({exc!r}); falling back to the pure-Python kernels.",
            file=sys.stderr,
        )


def extensions():
    if os.environ.get("FIFO_ROUTES_NO_EXT"):
        return []
    import numpy
    from Cython.Build import cythonize

    ext = Extension(
        "fifo_routes._kernels",
        ["src/fifo_routes/_kernels.pyx"],
        include_dirs=[numpy.get_include()],
        define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
        extra_compile_args=["-O3"],
    )
    return cythonize([ext], compiler_directives={"language_level": "3"})


setup(
    ext_modules=extensions(),
    cmdclass={"build_ext": optional_build_ext},
)
