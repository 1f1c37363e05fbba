"""Backend selection for the hot kernels.

The compiled ``_ckernels`` extension is used when it imports; otherwise, or
when the ``ZSOPT_PURE_PYTHON`` environment variable is set to a non-empty
value, the numpy fallback in ``_pykernels`` is used. Both expose
``base_batch``, ``shifted_rotated_batch`` and ``gtd_grid_minimum``.
"""
import importlib
import os

from ._pykernels import BASE_FUNCTIONS

__all__ = ["BACKEND", "BASE_FUNCTIONS", "available_backends", "get_backend",
           "base_batch", "shifted_rotated_batch", "gtd_grid_minimum"]

_MODULES = {"compiled": "zsopt._ckernels", "python": "zsopt._pykernels"}


def get_backend(name: str):
    """Import a backend module by name (``"compiled"`` or ``"python"``)."""
    return importlib.import_module(_MODULES[name])


def available_backends() -> list:
    names = []
    for name in _MODULES:
        try:
            get_backend(name)
        except ImportError:
            continue
        names.append(name)
    return names


def _select():
    if not os.environ.get("ZSOPT_PURE_PYTHON"):
        try:
            return "compiled", get_backend("compiled")
        except ImportError:
            pass
    return "python", get_backend("python")


BACKEND, _impl = _select()
base_batch = _impl.base_batch
shifted_rotated_batch = _impl.shifted_rotated_batch
gtd_grid_minimum = _impl.gtd_grid_minimum
