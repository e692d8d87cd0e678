import os

from setuptools import Extension, setup

# The compiled kernel core is optional: without a C toolchain the package
# falls back to the pure-Python kernels at import time.
ext_modules = []
if os.environ.get("VMHMC_PURE_PYTHON") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "vmhmc._kernels",
                    ["src/vmhmc/_kernels.pyx"],
                    # no fp contraction: the fallback must match bit for bit
                    extra_compile_args=["-O2", "-ffp-contract=off"],
                )
            ],
            language_level=3,
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
