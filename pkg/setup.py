import os

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("PEERSCOPE_NO_EXT"):
    try:
        import numpy
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "peerscope.metrics._speedups",
                    ["src/peerscope/metrics/_speedups.pyx"],
                    include_dirs=[numpy.get_include()],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        # No Cython/numpy at build time: install the pure-Python package;
        # peerscope.metrics.kernels falls back automatically at import.
        ext_modules = []

setup(ext_modules=ext_modules)
