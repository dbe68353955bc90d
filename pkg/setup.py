import os

from setuptools import setup

ext_modules = []
if os.environ.get("GENCORE_NO_EXT", "") != "1":
    try:
        from Cython.Build import cythonize
        from setuptools import Extension
    except ImportError:  # build without the compiled kernel
        pass
    else:
        ext_modules = cythonize(
            [Extension("gencore._kernels", ["src/gencore/_kernels.pyx"], extra_compile_args=["-O3"])],
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=ext_modules)
