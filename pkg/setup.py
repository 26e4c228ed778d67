# Cython extension for the numerical hot kernels. The build is optional:
# if compilation fails the package falls back to the pure-Python kernels.
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "qreservoir._kernels._core",
                ["src/qreservoir/_kernels/_core.pyx"],
                extra_compile_args=["-O3"],
                optional=True,
            )
        ],
        compiler_directives={"language_level": 3},
    )

setup(ext_modules=ext_modules)
