from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    # without Cython the package falls back to the pure-Python kernel
    ext_modules = []
else:
    ext_modules = cythonize(
        [Extension("openbook._kernels", ["src/openbook/_kernels.pyx"], extra_compile_args=["-O3"])],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
