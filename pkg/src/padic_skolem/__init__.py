"""Exact computation and certification of the p-adic zeros of integer linear
recurrence sequences, for primes at which every characteristic root lies in
Z_p.

Zeros are reported either as exact rationals (with multiplicity) or as Hensel
certificates (y, nu) pinning a unique simple zero in y + p^nu Z_p, and are
classified against the exact sequence: integer zeros, twisted integer
indices, non-integer rationals, or unidentified.  Newton-polygon counts
certify that nothing was missed.
"""

from ._kernels import BACKEND as KERNEL_BACKEND
from .driver import (
    DriverOptions,
    UnusablePrime,
    ZeroRecord,
    ZeroReport,
    escalate_multiplicity,
    find_padic_zeros,
    rational_zero_verify,
    relation_screen,
    simultaneous_skolem,
)
from .errors import SkolemError
from .interpolate import InterpolationContext, build_context, select_prime
from .lrs import Lrs, degeneracy_decompose, lrs_ring
from .padic import PadicInt, Valuation, padic_exp, padic_log, rational_reconstruct
from .ratpoly import RatPoly, resultant
from .search import SearchConfig, hensel_only_search, multiplicity_at, zero_search
from .series import PadicSeries, hensel_refine, newton_count

__version__ = "0.1.0"

__all__ = [
    "DriverOptions",
    "InterpolationContext",
    "KERNEL_BACKEND",
    "Lrs",
    "PadicInt",
    "PadicSeries",
    "RatPoly",
    "SearchConfig",
    "SkolemError",
    "UnusablePrime",
    "Valuation",
    "ZeroRecord",
    "ZeroReport",
    "build_context",
    "degeneracy_decompose",
    "escalate_multiplicity",
    "find_padic_zeros",
    "hensel_only_search",
    "hensel_refine",
    "lrs_ring",
    "multiplicity_at",
    "newton_count",
    "padic_exp",
    "padic_log",
    "rational_reconstruct",
    "rational_zero_verify",
    "relation_screen",
    "resultant",
    "select_prime",
    "simultaneous_skolem",
    "zero_search",
    "__version__",
]
