from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "formdepth.engine._core",
                ["src/formdepth/engine/_core.pyx"],
                language="c++",
            )
        ],
        language_level="3",
    )
except ImportError:
    # The package is fully functional on the pure-Python backend.
    ext_modules = []

setup(ext_modules=ext_modules)
