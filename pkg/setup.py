"""Build script: compiles the optional fast kinematics kernel.

The extension is optional; if Cython or a C compiler is unavailable the
package installs anyway and falls back to the pure-Python kernels.
"""

from setuptools import setup

ext_modules = []
try:
    import numpy
    from Cython.Build import cythonize

    ext_modules = cythonize(
        "src/feedsim/_kernels/_fastkin.pyx",
        compiler_directives={"language_level": "3"},
    )
    include_dirs = [numpy.get_include()]
    for ext in ext_modules:
        ext.include_dirs.extend(include_dirs)
        ext.optional = True
except ImportError:
    pass

setup(ext_modules=ext_modules)
