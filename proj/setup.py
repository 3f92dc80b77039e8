import glob

from pybind11.setup_helpers import Pybind11Extension, build_ext
from setuptools import setup

sources = sorted(glob.glob("src/*.cpp")) + ["python/cablewave_module.cpp"]

setup(
    ext_modules=[
        Pybind11Extension(
            "cablewave._core",
            sources,
            include_dirs=["include", "vendor"],
            cxx_std=20,
        )
    ],
    cmdclass={"build_ext": build_ext},
    packages=["cablewave"],
    package_dir={"": "python"},
)
