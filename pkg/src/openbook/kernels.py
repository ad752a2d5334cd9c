"""Select the compiled cactus kernel when it is built, else the Python one."""

from __future__ import annotations

from . import _kernels_py

try:
    from . import _kernels as _compiled
except ImportError:  # extension not built
    _compiled = None

BACKEND = "cython" if _compiled is not None else "python"
_active = _compiled if _compiled is not None else _kernels_py


def backend_module(name: str | None = None):
    if name is None:
        return _active
    if name == "python":
        return _kernels_py
    if name == "cython":
        if _compiled is None:
            raise RuntimeError("compiled kernel is not built")
        return _compiled
    raise ValueError(f"unknown backend {name!r}")


def cactus_tuples(n: int, backend: str | None = None) -> list[tuple[int, ...]]:
    return backend_module(backend).cactus_tuples(n)


def count_cacti(n: int, backend: str | None = None) -> int:
    return backend_module(backend).count_cacti(n)


transposition_table = _kernels_py.transposition_table
