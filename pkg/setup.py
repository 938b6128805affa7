"""Build script: compiles the optional Cython kernel extension.

The extension is marked optional; if no C compiler is available the
package installs anyway and falls back to the pure-Python kernels.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    extensions = cythonize(
        [
            Extension(
                "trisurf._kernels._core",
                ["src/trisurf/_kernels/_core.pyx"],
                extra_compile_args=["-O3"],
                optional=True,
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    extensions = []

setup(ext_modules=extensions)
