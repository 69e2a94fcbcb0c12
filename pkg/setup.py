"""Build script: compiles the optional C kernel extension.

The package works without the extension (a pure-Python/numpy fallback is
selected at import time), so a failed compile only costs speed.
"""

import sys

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    """Build the extension if possible; fall back to pure Python otherwise."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # compiler or Cython missing
            sys.stderr.write(
                f"warning: building latinldpc._fast failed ({exc}); "
                "using the pure-Python kernels\n"
            )

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            sys.stderr.write(
                f"warning: building {ext.name} failed ({exc}); "
                "using the pure-Python kernels\n"
            )


def extensions():
    try:
        from Cython.Build import cythonize
    except ImportError:
        return []
    ext = Extension(
        "latinldpc._fast",
        ["src/latinldpc/_fast.pyx"],
        extra_compile_args=["-O3"],
    )
    return cythonize([ext], language_level=3)


setup(
    ext_modules=extensions(),
    cmdclass={"build_ext": OptionalBuildExt},
)
