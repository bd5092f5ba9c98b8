"""Build script: compiles the Hopcroft-Karp kernel if Cython is available.

The extension is optional; without it the package falls back to the pure
Python kernel in obsplace._hk_py.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext = Extension("obsplace._hk", ["src/obsplace/_hk.pyx"])
    ext.optional = True
    ext_modules = cythonize([ext], language_level="3")

setup(ext_modules=ext_modules)
