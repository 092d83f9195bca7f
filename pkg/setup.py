import os

from setuptools import setup

ext_modules = []
if not os.environ.get("GCF_NO_EXTENSION"):
    try:
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [Extension("gcf._kernels", ["src/gcf/_kernels.pyx"], extra_compile_args=["-O3"])],
            compiler_directives={"language_level": 3},
        )
        for ext in ext_modules:
            ext.optional = True
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
