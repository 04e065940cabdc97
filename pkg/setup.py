import os

from setuptools import Extension, setup

# The compiled kernel is an optional speedup; a pure-Python twin ships in the
# package and is selected automatically when the extension is unavailable.
ext_modules = []
if os.environ.get("FOODN_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "foodn._fastkernel",
                    ["src/foodn/_fastkernel.pyx"],
                    optional=True,
                )
            ],
            compiler_directives={
                "language_level": "3",
                "boundscheck": False,
                "wraparound": False,
            },
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
