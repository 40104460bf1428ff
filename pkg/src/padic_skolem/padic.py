"""Arbitrary-precision arithmetic in Z_p for an odd prime p.

A :class:`PadicInt` is an element of Z_p known modulo p^K.  Arithmetic follows
the truncation rules: results carry the minimum of the operand precisions, and
division by a value of valuation t costs t digits.  Valuations of truncated
values are reported as :class:`Valuation`, which distinguishes an exactly known
v_p from the lower bound "at least K" carried by an all-zero residue.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import (
    DenominatorDivisibleByP,
    DivisionAmbiguous,
    NotPrincipalUnit,
    OutsideConvergenceDomain,
    PrecisionExhausted,
    PrimeMismatch,
)


def int_valuation(n: int, p: int) -> int:
    """Exponent of p in the nonzero integer n."""
    if n == 0:
        raise ValueError("valuation of 0 is infinite")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def ilog_floor(p: int, n: int) -> int:
    """floor(log_p(n)) for n >= 1, computed exactly."""
    v, q = 0, p
    while q <= n:
        q *= p
        v += 1
    return v


def factorial_valuation(n: int, p: int) -> int:
    """v_p(n!) by Legendre's formula."""
    v, q = 0, p
    while q <= n:
        v += n // q
        q *= p
    return v


@dataclass(frozen=True)
class Valuation:
    """Either an exact v_p = bound, or the lower bound v_p >= bound.

    The inexact form arises when a residue is zero to working precision: the
    true valuation may be anything from ``bound`` up to infinity, so callers
    that need it exactly must raise the working precision.
    """

    bound: int
    exact: bool

    @classmethod
    def finite(cls, j: int) -> "Valuation":
        return cls(j, True)

    @classmethod
    def at_least(cls, K: int) -> "Valuation":
        return cls(K, False)

    @property
    def is_finite(self) -> bool:
        return self.exact

    def ge(self, k: int) -> bool:
        """True when v_p >= k is certain."""
        return self.bound >= k

    def lt(self, k: int) -> bool:
        """True when v_p < k is certain."""
        return self.exact and self.bound < k

    def __repr__(self):
        return f"v={self.bound}" if self.exact else f"v>={self.bound}"


class PadicInt:
    """An element of Z_p known modulo p^K (p odd, K >= 1)."""

    __slots__ = ("prime", "precision", "residue")

    def __init__(self, prime: int, precision: int, value: int):
        if prime < 3 or prime % 2 == 0:
            raise ValueError(f"prime must be odd and >= 3, got {prime}")
        if precision < 1:
            raise PrecisionExhausted(f"precision must be >= 1, got {precision}")
        self.prime = prime
        self.precision = precision
        self.residue = value % (prime**precision)

    # -- constructors -------------------------------------------------

    @classmethod
    def from_rational(cls, a: int, b: int, prime: int, precision: int) -> "PadicInt":
        """Embed a/b into Z_p; requires gcd(b, p) = 1 and v_p(a/b) >= 0."""
        if b == 0:
            raise ZeroDivisionError("zero denominator")
        if b % prime == 0:
            raise DenominatorDivisibleByP(f"{a}/{b} has p={prime} in the denominator")
        m = prime**precision
        return cls(prime, precision, a * pow(b, -1, m))

    @classmethod
    def from_fraction(cls, x: Fraction, prime: int, precision: int) -> "PadicInt":
        return cls.from_rational(x.numerator, x.denominator, prime, precision)

    # -- inspection ---------------------------------------------------

    @property
    def modulus(self) -> int:
        return self.prime**self.precision

    def valuation(self) -> Valuation:
        if self.residue == 0:
            return Valuation.at_least(self.precision)
        return Valuation.finite(int_valuation(self.residue, self.prime))

    def is_zero_to_precision(self) -> bool:
        return self.residue == 0

    def digits(self, k: int) -> list[int]:
        """First k base-p digits, least significant first (k <= precision)."""
        if k > self.precision:
            raise PrecisionExhausted(f"only {self.precision} digits certified, {k} requested")
        out, n = [], self.residue
        for _ in range(k):
            n, r = divmod(n, self.prime)
            out.append(r)
        return out

    def reduce(self, precision: int) -> "PadicInt":
        """Forget digits beyond ``precision``."""
        if precision == self.precision:
            return self
        if precision > self.precision:
            raise PrecisionExhausted(f"cannot extend precision {self.precision} to {precision}")
        return PadicInt(self.prime, precision, self.residue)

    def __repr__(self):
        return f"PadicInt({self.residue} mod {self.prime}^{self.precision})"

    def __eq__(self, other):
        """Equality of representations (same prime, precision and residue)."""
        return (
            isinstance(other, PadicInt)
            and self.prime == other.prime
            and self.precision == other.precision
            and self.residue == other.residue
        )

    def __hash__(self):
        return hash((self.prime, self.precision, self.residue))

    def congruent(self, other: "PadicInt", k: int | None = None) -> bool:
        """Agreement modulo p^k (default: the joint precision)."""
        self._check(other)
        if k is None:
            k = min(self.precision, other.precision)
        if k > min(self.precision, other.precision):
            raise PrecisionExhausted("congruence level exceeds certified precision")
        q = self.prime**k
        return self.residue % q == other.residue % q

    # -- arithmetic ---------------------------------------------------

    def _check(self, other: "PadicInt"):
        if self.prime != other.prime:
            raise PrimeMismatch(f"{self.prime} vs {other.prime}")

    def _coerce(self, other):
        if isinstance(other, PadicInt):
            self._check(other)
            return other
        if isinstance(other, int):
            return PadicInt(self.prime, self.precision, other)
        if isinstance(other, Fraction):
            return PadicInt.from_fraction(other, self.prime, self.precision)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        k = min(self.precision, o.precision)
        return PadicInt(self.prime, k, self.residue + o.residue)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        k = min(self.precision, o.precision)
        return PadicInt(self.prime, k, self.residue - o.residue)

    def __rsub__(self, other):
        return -(self - other)

    def __neg__(self):
        return PadicInt(self.prime, self.precision, -self.residue)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        k = min(self.precision, o.precision)
        return PadicInt(self.prime, k, self.residue * o.residue)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        vo = o.valuation()
        if not vo.is_finite:
            raise DivisionAmbiguous(f"divisor is 0 mod {o.prime}^{o.precision}")
        t = vo.bound
        if not self.valuation().ge(t):
            raise ValueError("quotient would leave Z_p: v(dividend) < v(divisor)")
        k = min(self.precision, o.precision) - t
        if k < 1:
            raise PrecisionExhausted("division consumed all certified digits")
        pt = self.prime**t
        m = self.prime**k
        inv = pow((o.residue // pt) % m, -1, m)
        return PadicInt(self.prime, k, (self.residue // pt) * inv)

    def __pow__(self, n: int):
        if n < 0:
            return PadicInt(self.prime, self.precision, 1) / self**(-n)
        return PadicInt(self.prime, self.precision, pow(self.residue, n, self.modulus))

    def inverse(self) -> "PadicInt":
        return PadicInt(self.prime, self.precision, 1) / self


# -- named operation front-end (same semantics as the operators) -------

def arith(op: str, x: PadicInt, y: PadicInt) -> PadicInt:
    """Dispatch add/sub/mul/div/neg by name."""
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        return x / y
    if op == "neg":
        return -x
    raise ValueError(f"unknown operation {op!r}")


def rational_reconstruct(x: PadicInt, H: int) -> tuple[int, int] | None:
    """Find coprime (a, b) with |a| <= H, 0 < b <= H, gcd(b, p) = 1 and
    a/b = x mod p^K, or None when no such pair exists.

    When p^K > 2 H^2 the pair is unique and the half-extended Euclid scan
    finds it; below that bound every admissible denominator is tried.
    """
    if H < 1:
        return None
    m = x.modulus
    r = x.residue
    if m > 2 * H * H:
        r0, r1 = m, r
        t0, t1 = 0, 1
        while r1 > H:
            q = r0 // r1
            r0, r1 = r1, r0 - q * r1
            t0, t1 = t1, t0 - q * t1
        a, b = r1, t1
        if b == 0:
            return None
        if b < 0:
            a, b = -a, -b
        if abs(a) <= H and b <= H and gcd(a, b) == 1 and b % x.prime != 0:
            if (a - b * r) % m == 0:
                return (a, b)
        return None
    for b in range(1, H + 1):
        if b % x.prime == 0:
            continue
        a = (r * b) % m
        if a > m // 2:
            a -= m
        if abs(a) <= H and gcd(a, b) == 1:
            return (a, b)
    return None


def padic_log(y: PadicInt) -> PadicInt:
    """log of a principal unit y = 1 mod p, exact modulo p^K.

    Sums log(1+z) = z - z^2/2 + z^3/3 - ... for z = y - 1.  Terms with
    k v(z) - v_p(k) >= K are provably below the output precision; the kept
    terms are evaluated from an integer lift at a widened internal modulus so
    the divisions by k lose nothing.
    """
    p, K = y.prime, y.precision
    if y.residue % p != 1:
        raise NotPrincipalUnit(f"residue {y.residue % p} mod {p}, expected 1")
    z = (y.residue - 1) % y.modulus
    if z == 0:
        return PadicInt(p, K, 0)
    vz = int_valuation(z, p)
    kmax = 1
    while kmax * vz - ilog_floor(p, kmax) < K:
        kmax += 1
    # work modulus wide enough to absorb every division by p^{v_p(k)}
    W = ilog_floor(p, kmax)
    bigmod = p ** (K + W)
    m = p**K
    acc = 0
    zp = 1
    for k in range(1, kmax + 1):
        zp = zp * z % bigmod
        w = int_valuation(k, p) if k % p == 0 else 0
        term = (zp // p**w) * pow(k // p**w, -1, m) % m
        acc = (acc + term) % m if k % 2 == 1 else (acc - term) % m
    return PadicInt(p, K, acc)


def padic_exp(x: PadicInt) -> PadicInt:
    """exp on pZ_p (p odd), exact modulo p^K.

    The term x^k/k! has valuation at least k v(x) - (k-1)/(p-1), so the kept
    range is k < K(p-1)/((p-1)v(x) - 1) + 1; terms are evaluated from an
    integer lift at a widened modulus, dividing out v_p(k!) exactly.
    """
    p, K = x.prime, x.precision
    if x.residue == 0:
        return PadicInt(p, K, 1)
    vx = int_valuation(x.residue, p)
    if vx < 1:
        raise OutsideConvergenceDomain(f"v_p(x) = {vx}, need >= 1")
    num = K * (p - 1)
    den = (p - 1) * vx - 1
    kmax = num // den + 2
    W = factorial_valuation(kmax, p)
    bigmod = p ** (K + W)
    m = p**K
    acc = 1
    xp = 1
    fact_w = 0  # v_p(k!)
    fact_odd = 1  # (k!/p^{fact_w}) mod p^K
    for k in range(1, kmax + 1):
        xp = xp * x.residue % bigmod
        w = int_valuation(k, p) if k % p == 0 else 0
        fact_w += w
        fact_odd = fact_odd * (k // p**w) % m
        term = (xp // p**fact_w) * pow(fact_odd, -1, m) % m
        acc = (acc + term) % m
    return PadicInt(p, K, acc)
