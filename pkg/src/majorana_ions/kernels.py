"""Backend selection for the time-stepping kernel.

The Cython build is used when it imported cleanly; otherwise the numpy
implementation with the same signature takes over.
"""
from . import _kernels_py

try:
    from . import _kernels as _compiled
except ImportError:  # extension not built
    _compiled = None

BACKEND = "cython" if _compiled is not None else "python"
rk4_propagate_py = _kernels_py.rk4_propagate
rk4_propagate_compiled = _compiled.rk4_propagate if _compiled is not None else None
rk4_propagate = rk4_propagate_compiled or rk4_propagate_py
