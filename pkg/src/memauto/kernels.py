"""Backend selection for the search kernels.

The compiled extension ``memauto._kernels`` is used when importable; set
``MEMAUTO_PURE_PYTHON=1`` to force the pure-Python backend.  Programs that
do not fit 64-bit masks always run in Python.
"""

import os

from memauto import _pykernels

_native = None
if os.environ.get("MEMAUTO_PURE_PYTHON", "0") in ("", "0"):
    try:
        from memauto import _kernels as _native
    except ImportError:  # extension not built
        _native = None

BACKEND = "cython" if _native is not None else "python"
AVAILABLE = ("cython", "python") if _native is not None else ("python",)


def _impl(backend, fits):
    if backend is None:
        backend = BACKEND
    if backend == "cython":
        if _native is None:
            raise RuntimeError("compiled kernels are not available")
        if fits:
            return _native
    elif backend != "python":
        raise ValueError(f"unknown backend {backend!r}")
    return _pykernels


def membership_search(prog, word, mem0, backend=None):
    return _impl(backend, prog.n_vars <= 64).membership_search(prog, word, mem0)


def abstract_search(prog, backend=None):
    fits = prog.n_vars + max(1, prog.n_states).bit_length() <= 64
    return _impl(backend, fits).abstract_search(prog)


def random_walk(prog, bitgen, max_steps, restarts, backend=None):
    impl = _impl(backend, prog.n_vars <= 63)
    if impl is _native:
        max_steps = min(max_steps, 2**64 - 1)
    return impl.random_walk(prog, bitgen, max_steps, restarts)
