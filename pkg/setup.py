import numpy as np
from setuptools import setup, Extension

try:
    from Cython.Build import cythonize

    extensions = cythonize(
        [
            Extension(
                "edtransfer._kernel",
                ["src/edtransfer/_kernel.pyx"],
                include_dirs=[np.get_include()],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    # No Cython at build time: the package falls back to the pure-Python
    # tracker selected at import in edtransfer._core.
    extensions = []

setup(ext_modules=extensions)
