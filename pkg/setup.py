import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("COURANT_NO_EXT") != "1":
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "courant._core.c_kernel",
                ["src/courant/_core/c_kernel.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        language_level=3,
    )

setup(ext_modules=ext_modules)
