"""Select the compiled kernel module when available.

Set ``FGNPROJ_PURE_PYTHON=1`` to force the numpy fallback.
"""
import os

from . import _kernels_py

python_kernels = _kernels_py

try:
    from . import _kernels as compiled_kernels
except ImportError:  # extension not built
    compiled_kernels = None

if compiled_kernels is not None and os.environ.get("FGNPROJ_PURE_PYTHON", "") not in ("1", "true", "yes"):
    kernels = compiled_kernels
    BACKEND = "cython"
else:
    kernels = python_kernels
    BACKEND = "python"


def available_backends():
    out = {"python": python_kernels}
    if compiled_kernels is not None:
        out["cython"] = compiled_kernels
    return out
