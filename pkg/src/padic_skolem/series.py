"""Truncated power series over Z_p with certified tails.

A :class:`PadicSeries` stores coefficients b_0..b_D modulo p^K together with a
tail bound (c, s), s > 0 rational, asserting v_p(b_j) >= c + s*j for every
j > D.  The bound makes evaluation on Z_p certified modulo
p^min(K, ceil(c + s(D+1))) and keeps Newton-polygon data finite: only indices
up to D can carry the minimum.

All interpolants built by this library satisfy c + s(D+1) >= K, so in practice
the truncation never costs digits.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ceil, floor

from ._kernels import convolve_trunc, horner_eval, scaled_add, taylor_shift
from .errors import (
    AmbiguousValuation,
    HenselConditionFails,
    IdenticallyZeroToPrecision,
    PrecisionExhausted,
    PrimeMismatch,
)
from .padic import PadicInt, Valuation, int_valuation


class PadicSeries:
    __slots__ = ("prime", "precision", "coeffs", "tail_c", "tail_s")

    def __init__(self, prime: int, precision: int, coeffs, tail_c: int, tail_s):
        if prime < 3 or prime % 2 == 0:
            raise ValueError(f"prime must be odd and >= 3, got {prime}")
        if precision < 1:
            raise PrecisionExhausted("series precision must be >= 1")
        s = Fraction(tail_s)
        if s <= 0:
            raise ValueError("tail slope must be positive")
        m = prime**precision
        self.prime = prime
        self.precision = precision
        self.coeffs = [c % m for c in coeffs] or [0]
        self.tail_c = tail_c
        self.tail_s = s

    @classmethod
    def from_padic_coeffs(cls, coeffs: list[PadicInt], tail_c: int, tail_s) -> "PadicSeries":
        if not coeffs:
            raise ValueError("need at least one coefficient")
        p = coeffs[0].prime
        K = min(c.precision for c in coeffs)
        return cls(p, K, [c.residue for c in coeffs], tail_c, tail_s)

    @classmethod
    def polynomial(cls, prime: int, precision: int, coeffs) -> "PadicSeries":
        """A polynomial as a series; the vanishing tail supports any bound."""
        return cls(prime, precision, coeffs, precision, 1)

    # -- inspection ---------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def modulus(self) -> int:
        return self.prime**self.precision

    def eval_precision(self) -> int:
        """Number of certified digits of any evaluation on Z_p."""
        tail = self.tail_c + self.tail_s * (self.degree + 1)
        return min(self.precision, ceil(tail))

    def coeff(self, j: int) -> PadicInt:
        if j > self.degree:
            return PadicInt(self.prime, self.precision, 0)
        return PadicInt(self.prime, self.precision, self.coeffs[j])

    def is_zero_to_precision(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def __repr__(self):
        head = ", ".join(str(c) for c in self.coeffs[:4])
        return (
            f"PadicSeries(p={self.prime}, K={self.precision}, D={self.degree}, "
            f"[{head}{', ...' if self.degree > 3 else ''}], tail=({self.tail_c}, {self.tail_s}))"
        )

    # -- operations ---------------------------------------------------

    def eval(self, x) -> PadicInt:
        """Horner evaluation at x in Z_p."""
        if isinstance(x, int):
            x = PadicInt(self.prime, self.precision, x)
        if x.prime != self.prime:
            raise PrimeMismatch(f"{x.prime} vs {self.prime}")
        k = min(self.eval_precision(), x.precision)
        if k < 1:
            raise PrecisionExhausted("no certified digits left for evaluation")
        m = self.prime**k
        return PadicInt(self.prime, k, horner_eval(self.coeffs, x.residue % m, m))

    def derivative(self) -> "PadicSeries":
        d = [(j * c) % self.modulus for j, c in enumerate(self.coeffs)][1:] or [0]
        # v((j+1) b_{j+1}) >= v(b_{j+1}) >= c + s(j+1), an affine bound again
        c = floor(Fraction(self.tail_c) + self.tail_s)
        return PadicSeries(self.prime, self.precision, d, c, self.tail_s)

    def shift(self, z) -> "PadicSeries":
        """The re-expansion g(X) = f(z + X) around z in Z_p.

        Dropped tail terms contribute at least c + s(D+1) to every output
        coefficient, so the result precision is capped at eval_precision().
        """
        if isinstance(z, PadicInt):
            if z.prime != self.prime:
                raise PrimeMismatch(f"{z.prime} vs {self.prime}")
            z = z.residue
        k = self.eval_precision()
        m = self.prime**k
        return PadicSeries(self.prime, k, taylor_shift(self.coeffs, z % m, m), self.tail_c, self.tail_s)

    def mul(self, other: "PadicSeries", trunc: int | None = None) -> "PadicSeries":
        """Truncated product; meaningful for polynomial-like factors."""
        if other.prime != self.prime:
            raise PrimeMismatch(f"{other.prime} vs {self.prime}")
        K = min(self.precision, other.precision)
        if trunc is None:
            trunc = self.degree + other.degree + 1
        m = self.prime**K
        out = convolve_trunc(self.coeffs, other.coeffs, m, trunc)
        c = min(self.tail_c, other.tail_c)
        s = min(self.tail_s, other.tail_s)
        return PadicSeries(self.prime, K, out, c, s)

    def add(self, other: "PadicSeries") -> "PadicSeries":
        if other.prime != self.prime:
            raise PrimeMismatch(f"{other.prime} vs {self.prime}")
        K = min(self.precision, other.precision)
        m = self.prime**K
        n = max(len(self.coeffs), len(other.coeffs))
        out = [0] * n
        scaled_add(out, self.coeffs, 1, m)
        scaled_add(out, other.coeffs, 1, m)
        return PadicSeries(self.prime, K, out, min(self.tail_c, other.tail_c), min(self.tail_s, other.tail_s))


@dataclass(frozen=True)
class NewtonCount:
    """Zero counts of a series around a centre z at radius r (in C_p, with
    multiplicity): ``ball`` counts v(x - z) >= r, ``sphere`` counts
    v(x - z) = r exactly; mu < nu are the extreme indices attaining the
    minimum of v(a_j) + j r over the shifted coefficients."""

    sphere: int
    ball: int
    mu: int
    nu: int
    min_val: int


def newton_count(f: PadicSeries, z, r: int) -> NewtonCount:
    """Count zeros of f in the ball/sphere around z at radius r.

    ``ball`` is the largest index attaining min_j (v(a_j) + j r) for the
    coefficients a_j of f(z + X); ``sphere`` = nu - mu.  Raises
    AmbiguousValuation when a truncated coefficient or the certified tail
    could disturb the attaining set, and IdenticallyZeroToPrecision when no
    coefficient is visible at all.
    """
    if r < 0:
        raise ValueError("radius exponent must be >= 0")
    g = f if _is_zero_center(z) else f.shift(z)
    K = g.precision
    vals: list[Valuation] = []
    for c in g.coeffs:
        vals.append(Valuation.finite(int_valuation(c, g.prime)) if c else Valuation.at_least(K))
    finite = [(j, v.bound) for j, v in enumerate(vals) if v.is_finite]
    if not finite:
        raise IdenticallyZeroToPrecision(f"all {g.degree + 1} coefficients vanish mod p^{K}")
    min_val = min(v + j * r for j, v in finite)
    attaining = [j for j, v in finite if v + j * r == min_val]
    for j, v in enumerate(vals):
        if not v.is_finite and K + j * r <= min_val:
            raise AmbiguousValuation(
                f"coefficient {j} is 0 mod p^{K} but could attain the Newton minimum {min_val}"
            )
    # the certified tail must sit strictly above the minimum
    tail_floor = g.tail_c + (g.tail_s + r) * (g.degree + 1)
    if tail_floor <= min_val:
        raise AmbiguousValuation("certified tail could attain the Newton minimum; raise precision")
    mu, nu = attaining[0], attaining[-1]
    return NewtonCount(sphere=nu - mu, ball=nu, mu=mu, nu=nu, min_val=min_val)


def _is_zero_center(z) -> bool:
    if isinstance(z, PadicInt):
        return z.residue == 0
    return z == 0


def hensel_condition(fy: PadicInt, fpy: PadicInt) -> tuple[bool, int]:
    """Check v(f(y)) > 2 v(f'(y)); returns (holds, t = v(f'(y))).

    The derivative valuation must be exactly known; the function valuation may
    be a lower bound (an all-zero residue still certifies the inequality when
    the working precision exceeds 2t).
    """
    vp = fpy.valuation()
    if not vp.is_finite:
        return (False, -1)
    t = vp.bound
    return (fy.valuation().bound > 2 * t, t)


def hensel_refine(
    f: PadicSeries,
    y: PadicInt,
    target: int | None = None,
    fprime: PadicSeries | None = None,
    trace: list | None = None,
) -> PadicInt:
    """Newton iteration x <- x - f(x)/f'(x) from a point satisfying the
    Hensel condition v(f(y)) > 2 v(f'(y)).

    Returns an approximation of the unique zero in y + p^{t+1} Z_p, refined
    until the residual is zero to ``target`` digits (default: everything the
    series precision allows).  Each step at least doubles the excess
    e = v(f(x)) - 2t while the residual valuation stays exactly known;
    ``trace`` (if given) collects the residual Valuations per iteration.
    """
    fp = fprime if fprime is not None else f.derivative()
    fy = f.eval(y)
    ok, t = hensel_condition(fy, fp.eval(y))
    if not ok:
        raise HenselConditionFails(f"v(f(y))={fy.valuation()}, v(f'(y)) not small enough at y={y.residue}")
    if target is None:
        target = f.eval_precision()
    x = y
    if trace is not None:
        trace.append(fy.valuation())
    guard = 0
    while True:
        fx = f.eval(x)
        v = fx.valuation()
        if not v.is_finite or v.bound >= target:
            return x
        step = fx / fp.eval(x)
        x = x - step
        if trace is not None:
            trace.append(f.eval(x).valuation())
        guard += 1
        if guard > 4 * f.precision + 64:
            raise PrecisionExhausted("Newton iteration failed to converge; raise precision")
