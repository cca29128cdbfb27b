"""Build script: compiles the optional Cython kernel extension.

The extension accelerates the tree split scan and histogram accumulation.
It is marked optional: if compilation fails the package installs anyway and
falls back to the pure-numpy kernels in testlab._kernels_fallback.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
    import numpy

    extensions = cythonize(
        [
            Extension(
                "testlab._kernels",
                sources=["src/testlab/_kernels.pyx"],
                include_dirs=[numpy.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                extra_compile_args=["-O3"],
                optional=True,
            )
        ],
        compiler_directives={
            "language_level": 3,
            "boundscheck": False,
            "wraparound": False,
        },
    )
except ImportError:
    extensions = []

setup(ext_modules=extensions)
