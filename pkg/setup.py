"""Builds the optional compiled kernel core.

The package works without it (permpoly._kernels falls back to the pure-Python
backend at import time), so a failed compile downgrades instead of breaking
the install.
"""

import os

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None


class optional_build_ext(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:  # missing compiler, etc.
            print(f"warning: compiled kernels skipped ({exc}); pure backend will be used")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print(f"warning: could not build {ext.name} ({exc}); pure backend will be used")


extensions = []
if cythonize is not None and not os.environ.get("PERMPOLY_PURE_BUILD"):
    extensions = cythonize(
        [Extension("permpoly._kernels._core", ["src/permpoly/_kernels/_core.pyx"])],
        compiler_directives={
            "language_level": "3",
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
        },
    )

setup(ext_modules=extensions, cmdclass={"build_ext": optional_build_ext})
