import numpy as np
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "genpotts.kernels._heatbath",
                ["src/genpotts/kernels/_heatbath.pyx"],
                include_dirs=[np.get_include()],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    # No Cython available: the pure-Python kernel is picked up at import time.
    ext_modules = []

setup(ext_modules=ext_modules)
