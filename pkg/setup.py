import sys

from setuptools import Extension, setup

# The tokenizer scan kernel is optional: when Cython (or a C compiler) is
# missing the package falls back to the pure-Python kernel at import time.
ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("docelem._kernels._scan", ["src/docelem/_kernels/_scan.pyx"])],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    sys.stderr.write("Cython unavailable; installing with the pure-Python scan kernel\n")

setup(ext_modules=ext_modules)
