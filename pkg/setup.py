"""Build hook for the optional alignment extension.

The package is pure Python except for askit.wer._align_cy, a Cython
version of the alignment kernel. If Cython or a C compiler is missing
the build still succeeds and askit.wer falls back to the pure-Python
kernel at import time. Set ASKIT_PURE_PYTHON=1 to skip the extension
entirely.
"""

import os

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    """Degrade to a warning when the extension cannot be compiled."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # compiler missing, etc.
            print(f"warning: skipping C extension build ({exc}); "
                  "askit will use the pure-Python alignment kernel")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print(f"warning: could not build {ext.name} ({exc}); "
                  "askit will use the pure-Python alignment kernel")


ext_modules = []
cmdclass = {}
if not os.environ.get("ASKIT_PURE_PYTHON"):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [Extension("askit.wer._align_cy", ["src/askit/wer/_align_cy.pyx"])],
            language_level="3",
        )
        cmdclass = {"build_ext": optional_build_ext}
    except ImportError:
        pass

setup(ext_modules=ext_modules, cmdclass=cmdclass)
