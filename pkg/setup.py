"""Build the optional Cython kernel.

The package works without it: ``lfdecay.kernels`` falls back to a NumPy
implementation when the compiled module is missing.
"""
import os

from setuptools import setup

ext_modules = []
if os.environ.get("LFDECAY_NO_EXT") != "1":
    try:
        import numpy
        from Cython.Build import cythonize
        from setuptools import Extension
    except ImportError:
        pass
    else:
        ext_modules = cythonize(
            [
                Extension(
                    "lfdecay.kernels._lorentz",
                    ["src/lfdecay/kernels/_lorentz.pyx"],
                    include_dirs=[numpy.get_include()],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=ext_modules)
