"""Build hook: compile the optional closure kernel when Cython is available.

The package is fully functional without the extension (a pure-Python kernel
is selected at import time), so any build failure here downgrades to a
warning instead of failing the install.
"""

import warnings

from setuptools import setup
from setuptools.command.build_ext import build_ext


def _extensions():
    try:
        from Cython.Build import cythonize
        from setuptools.extension import Extension
    except Exception as exc:  # pragma: no cover - environment without Cython
        warnings.warn(f"Cython unavailable, installing without compiled kernel: {exc}")
        return []
    return cythonize(
        [Extension("mvtensor._kernel._fast", ["src/mvtensor/_kernel/_fast.pyx"])],
        language_level="3",
    )


class OptionalBuildExt(build_ext):
    """build_ext that tolerates a failing compiler."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # pragma: no cover
            warnings.warn(f"compiled kernel skipped: {exc}")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:  # pragma: no cover
            warnings.warn(f"compiled kernel {ext.name} skipped: {exc}")


setup(ext_modules=_extensions(), cmdclass={"build_ext": OptionalBuildExt})
