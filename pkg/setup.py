"""Builds the optional compiled sampler; the package works without it."""
from setuptools import setup
from setuptools.command.build_ext import build_ext

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/lozenge/_sampler_ext.pyx"],
        compiler_directives={"language_level": "3"},
        quiet=True,
    )
except ImportError:
    pass


class OptionalBuildExt(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:  # noqa: BLE001
            print(f"warning: compiled sampler not built ({exc}); using the Python loop")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:  # noqa: BLE001
            print(f"warning: could not build {ext.name} ({exc})")


setup(ext_modules=ext_modules, cmdclass={"build_ext": OptionalBuildExt})
