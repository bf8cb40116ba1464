"""Build script for the optional compiled trial kernel.

The package works without the extension (a numpy fallback is selected at
import time), but the Cython kernel is considerably faster for large trial
counts, so we build it whenever Cython and a C compiler are available.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

if cythonize is not None:
    extensions = cythonize(
        [
            Extension(
                "cnoma_oam._kernel._compiled",
                ["src/cnoma_oam/_kernel/_compiled.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
else:
    extensions = []

setup(ext_modules=extensions)
