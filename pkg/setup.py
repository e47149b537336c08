"""Build script: compiles the optional Cython kernel extension.

The package works without the extension (pure-numpy fallbacks are selected at
import time), so any build failure here downgrades to a warning rather than
aborting the install.
"""

import sys

from setuptools import setup

try:
    import numpy
    from Cython.Build import cythonize
    from setuptools.extension import Extension

    extensions = cythonize(
        [
            Extension(
                "hgtrace._kernels._speed",
                ["src/hgtrace/_kernels/_speed.pyx"],
                include_dirs=[numpy.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                extra_compile_args=["-O3"],
            )
        ],
        language_level=3,
    )
except Exception as exc:  # pragma: no cover - depends on toolchain
    print(f"hgtrace: skipping compiled kernels ({exc}); pure fallback will be used",
          file=sys.stderr)
    extensions = []

setup(ext_modules=extensions)
