"""Kernel backend selection: compiled extension with pure-Python fallback.

The compiled module is preferred when importable.  Set
FIFO_ROUTES_KERNELS=python (or =c) before import to force a backend;
forcing "c" raises if the extension is missing instead of silently
degrading.
"""

from __future__ import annotations

import os


def load_backend(name: str):
    """Return the kernel module for an explicit backend name."""
    if name in ("python", "py"):
        from fifo_routes import _kernels_py

        return _kernels_py
    if name == "c":
        from fifo_routes import _kernels

        return _kernels
    raise ValueError(f"unknown kernel backend {name!r}")


def _select():
    forced = os.environ.get("FIFO_ROUTES_KERNELS")
    if forced:
        return load_backend(forced)
    try:
        from fifo_routes import _kernels

        return _kernels
    except ImportError:
        from fifo_routes import _kernels_py

        return _kernels_py


_impl = _select()

BACKEND = _impl.BACKEND_NAME
dominance_matrix = _impl.dominance_matrix
chain_partition = _impl.chain_partition
greedy_partition = _impl.greedy_partition
