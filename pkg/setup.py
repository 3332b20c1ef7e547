import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("HOMALT_NO_EXT", "") in ("", "0"):
    try:
        from Cython.Build import cythonize
    except ImportError:
        pass
    else:
        ext_modules = cythonize(
            [Extension("homalt._kernels", ["src/homalt/_kernels.pyx"], optional=True)],
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=ext_modules)
