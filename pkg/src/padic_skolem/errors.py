"""Exception hierarchy.

``NeedMorePrecision`` groups the failures that are cured by doubling the
working precision and rerunning; the driver catches it centrally.
"""


class SkolemError(Exception):
    """Base class for all library errors."""


class PrimeMismatch(SkolemError):
    """Arithmetic between values living over different primes."""


class DivisionAmbiguous(SkolemError):
    """Divisor is zero to working precision, so its valuation is unknown."""


class DenominatorDivisibleByP(SkolemError):
    """Rational with p in the denominator cannot be embedded in Z_p."""


class NotPrincipalUnit(SkolemError):
    """p-adic logarithm applied outside 1 + pZ_p."""


class OutsideConvergenceDomain(SkolemError):
    """p-adic exponential applied outside pZ_p."""


class NeedMorePrecision(SkolemError):
    """Recoverable: rerun the computation at doubled working precision."""


class AmbiguousValuation(NeedMorePrecision):
    """A valuation needed exactly is only bounded below at this precision."""


class IdenticallyZeroToPrecision(NeedMorePrecision):
    """Every examined series coefficient vanishes to working precision."""


class PrecisionExhausted(NeedMorePrecision):
    """An operation consumed all certified digits."""


class HenselConditionFails(SkolemError):
    """v(f(y)) > 2 v(f'(y)) does not hold at the proposed point."""


class IdenticallyZero(SkolemError):
    """The input sequence is identically zero."""


class SearchExhausted(SkolemError):
    """No usable prime below the configured ceiling."""


class MalformedInstance(SkolemError):
    """Instance file fails validation; message names the offending field."""
