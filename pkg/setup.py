"""Builds the optional compiled search kernel; the package works without it."""
import os

from setuptools import setup

ext_modules = []
if os.environ.get("CIRCSEP_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize
    except ImportError:
        cythonize = None
    if cythonize is not None:
        ext_modules = cythonize(["src/circsep/_kernels.pyx"], quiet=True,
                                compiler_directives={"language_level": "3"})

setup(ext_modules=ext_modules)
