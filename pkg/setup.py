import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("COVERPACK_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [Extension("coverpack._ckern", ["src/coverpack/_ckern.pyx"])],
            language_level="3",
        )
    except ImportError:
        # The package is fully functional on the pure-Python core.
        ext_modules = []

# package layout repeated here so legacy `setup.py`-driven installs
# (pip < 23 editable fallback) resolve the src/ prefix correctly
setup(
    package_dir={"": "src"},
    packages=["coverpack"],
    ext_modules=ext_modules,
)
