from pathlib import Path

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:  # pure-Python install; the fallback kernels are used
    cythonize = None

extensions = []
if cythonize is not None:
    extensions = cythonize(
        [
            Extension(f"pfladder.{pyx.stem}", [str(pyx)], extra_compile_args=["-O3"])
            for pyx in sorted(Path("src/pfladder").glob("*.pyx"))
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=extensions)
