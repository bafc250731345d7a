"""Hot loops for spectral scans of the transverse rate.

A compiled Cython module is used when it was built; otherwise the NumPy
fallback is loaded. Set ``LFDECAY_BACKEND=python`` to force the fallback.
"""
import importlib
import os

from ._lorentz_py import gamma_perp_from_eps

_PURE = "lfdecay.kernels._lorentz_py"
_COMPILED = "lfdecay.kernels._lorentz"


def load_backend(name):
    """Return the kernel module for ``"cython"`` or ``"python"``."""
    if name == "python":
        return importlib.import_module(_PURE)
    if name == "cython":
        return importlib.import_module(_COMPILED)
    raise ValueError(f"unknown kernel backend {name!r}")


def available_backends():
    names = ["python"]
    try:
        load_backend("cython")
    except ImportError:
        pass
    else:
        names.insert(0, "cython")
    return names


if os.environ.get("LFDECAY_BACKEND", "").lower() == "python":
    _impl = load_backend("python")
else:
    try:
        _impl = load_backend("cython")
    except ImportError:
        _impl = load_backend("python")

BACKEND = "cython" if _impl.__name__ == _COMPILED else "python"

gamma_perp_lorentz = _impl.gamma_perp_lorentz
gamma_perp_lorentz_grid = _impl.gamma_perp_lorentz_grid

__all__ = [
    "BACKEND",
    "available_backends",
    "gamma_perp_from_eps",
    "gamma_perp_lorentz",
    "gamma_perp_lorentz_grid",
    "load_backend",
]
