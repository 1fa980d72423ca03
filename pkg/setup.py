"""Builds the optional compiled kernel; the package works without it."""

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:  # no compiler: the pure-Python kernel is used
            print(f"skipping compiled kernel: {exc}")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print(f"skipping {ext.name}: {exc}")


try:
    from Cython.Build import cythonize
    extensions = cythonize([Extension("gbraid._kernel", ["src/gbraid/_kernel.pyx"])],
                           language_level=3)
except ImportError:
    extensions = []

setup(ext_modules=extensions, cmdclass={"build_ext": OptionalBuildExt})
