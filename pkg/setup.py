import os

from setuptools import setup
from setuptools.command.build_ext import build_ext

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None


class OptionalBuildExt(build_ext):
    """Never fail the install because the compiled kernel did not build."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # noqa: BLE001
            print(f"warning: compiled kernel not built ({exc}); using the pure-Python search")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:  # noqa: BLE001
            print(f"warning: failed to build {ext.name} ({exc}); using the pure-Python search")


ext_modules = []
if cythonize is not None and not os.environ.get("CDGP_NO_EXT"):
    ext_modules = cythonize(
        ["src/cdgp/solver/_bpb.pyx"],
        compiler_directives={"language_level": "3"},
    )
    for ext in ext_modules:
        ext.extra_compile_args = ["-O3"]

setup(ext_modules=ext_modules, cmdclass={"build_ext": OptionalBuildExt})
