"""Build script: compiles the optional accelerator extension.

The package works without the extension (a NumPy fallback is selected at
import time), so any failure to cythonize or compile downgrades the install
to pure Python instead of aborting it.
"""

import os

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    """build_ext that tolerates a missing or broken C toolchain."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # noqa: BLE001 - any build failure is non-fatal
            print(f"warning: compiled core skipped ({exc}); using pure-Python backend")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:  # noqa: BLE001
            print(f"warning: building {ext.name} failed ({exc}); using pure-Python backend")


ext_modules = []
if os.environ.get("SPARSEHULL_SKIP_EXT") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [Extension("sparsehull._speedups", ["src/sparsehull/_speedups.pyx"])],
            compiler_directives={
                "language_level": "3",
                "boundscheck": False,
                "wraparound": False,
                "cdivision": True,
                "initializedcheck": False,
            },
        )
    except ImportError:
        print("warning: Cython not available; using pure-Python backend")

setup(ext_modules=ext_modules, cmdclass={"build_ext": optional_build_ext})
