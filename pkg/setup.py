from setuptools import Extension, setup

# The compiled kernels are an optional speedup: the package falls back to the
# numpy implementations in msolab._kernels_py when the extension is missing.
try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

extensions = []
if cythonize is not None:
    extensions = cythonize(
        [Extension("msolab._ckernels", ["src/msolab/_ckernels.pyx"])],
        language_level="3",
    )

setup(ext_modules=extensions)
