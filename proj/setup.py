import glob

from pybind11.setup_helpers import Pybind11Extension, build_ext
from setuptools import setup

ext = Pybind11Extension(
    "qbound._core",
    sorted(glob.glob("src/*.cpp")) + ["python/_core.cpp"],
    include_dirs=["include", "vendor", "/usr/include/eigen3"],
    cxx_std=20,
)

setup(
    packages=["qbound"],
    package_dir={"qbound": "python/qbound"},
    ext_modules=[ext],
    cmdclass={"build_ext": build_ext},
)
