import os

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("LONGJUMP_NO_EXT"):
    try:
        import numpy as np
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "longjump._kernels._core",
                    ["src/longjump/_kernels/_core.pyx"],
                    include_dirs=[np.get_include()],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        # No Cython available: install pure-Python only, kernels fall back.
        ext_modules = []

setup(ext_modules=ext_modules)
