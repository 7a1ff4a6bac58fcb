"""Dominance kernel backend, selected once at import.

Prefers the compiled Cython core; falls back to the numpy implementation.
Both expose the same functions with identical outputs, so everything built
on top is backend-independent. Set ``SYSEVAL_FORCE_PY_KERNELS=1`` to skip
the compiled core (used by the benchmark and parity tests).
"""

import os

from . import _pydom

if os.environ.get("SYSEVAL_FORCE_PY_KERNELS"):
    _impl = _pydom
else:
    try:
        from . import _cdom as _impl
    except ImportError:
        _impl = _pydom

BACKEND = _impl.BACKEND
dominance_matrix = _impl.dominance_matrix
nondominated_mask = _impl.nondominated_mask
peel_layers = _impl.peel_layers

__all__ = ["BACKEND", "dominance_matrix", "nondominated_mask", "peel_layers"]
