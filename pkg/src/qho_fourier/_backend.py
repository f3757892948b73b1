"""Select the compiled kernels when available, else the pure-Python ones."""
import os

if os.environ.get("QHO_FOURIER_PURE_PYTHON"):
    from . import _core_py as core
    BACKEND = "python"
else:
    try:
        from . import _core as core
        BACKEND = "cython"
    except ImportError:
        from . import _core_py as core
        BACKEND = "python"

__all__ = ["core", "BACKEND"]
