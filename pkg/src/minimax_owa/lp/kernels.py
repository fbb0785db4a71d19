"""Backend selection for the simplex tableau kernels.

The compiled ``_ckernels`` extension is preferred when it imports; otherwise
the numpy implementation in ``_pykernels`` is used.
"""
from __future__ import annotations

from types import ModuleType

from . import _pykernels

try:
    from . import _ckernels
except ImportError:  # extension not built
    _ckernels = None

BACKENDS: dict[str, ModuleType] = {"python": _pykernels}
if _ckernels is not None:
    BACKENDS["cython"] = _ckernels

DEFAULT_BACKEND = "cython" if _ckernels is not None else "python"


def have_compiled() -> bool:
    return _ckernels is not None


def get_backend(name: str | None = None) -> ModuleType:
    name = name or DEFAULT_BACKEND
    try:
        return BACKENDS[name]
    except KeyError:
        raise ValueError(
            f"unknown kernel backend {name!r}; available: {sorted(BACKENDS)}"
        ) from None
