"""Kernel backend selection.

The hot inner loops of the library (series evaluation, Taylor shifts of
truncated series, coefficient convolution) are available both as pure Python
and as a compiled Cython extension.  The compiled backend is preferred when it
built; set ``PADIC_SKOLEM_PURE=1`` to force the pure one (used by the parity
tests and the kernel benchmark).
"""

import os

from . import _pure

if os.environ.get("PADIC_SKOLEM_PURE"):
    _impl = _pure
    BACKEND = "pure"
else:
    try:
        from . import _speedups as _impl  # type: ignore[no-redef]

        BACKEND = "compiled"
    except ImportError:
        _impl = _pure
        BACKEND = "pure"

horner_eval = _impl.horner_eval
taylor_shift = _impl.taylor_shift
convolve_trunc = _impl.convolve_trunc
scaled_add = _impl.scaled_add

__all__ = [
    "BACKEND",
    "horner_eval",
    "taylor_shift",
    "convolve_trunc",
    "scaled_add",
]
