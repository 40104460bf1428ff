"""Exact univariate polynomial arithmetic over Q (Fraction coefficients).

Coefficients are stored ascending (constant term first).  Everything here is
exact; no floating point anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cache, reduce
from math import gcd, lcm


def _norm(coeffs: list[Fraction]) -> tuple[Fraction, ...]:
    c = [Fraction(x) for x in coeffs]
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


class RatPoly:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        self.coeffs = _norm(list(coeffs))

    @classmethod
    def from_roots(cls, roots) -> "RatPoly":
        out = cls([1])
        for r in roots:
            out = out * cls([-Fraction(r), 1])
        return out

    @classmethod
    def x_power(cls, n: int) -> "RatPoly":
        return cls([0] * n + [1])

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> Fraction:
        if self.is_zero:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __eq__(self, other):
        return isinstance(other, RatPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        if self.is_zero:
            return "RatPoly(0)"
        terms = [f"{c}*X^{j}" for j, c in enumerate(self.coeffs) if c]
        return "RatPoly(" + " + ".join(terms) + ")"

    def __add__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [Fraction(0)] * (n - len(self.coeffs))
        b = list(other.coeffs) + [Fraction(0)] * (n - len(other.coeffs))
        return RatPoly([x + y for x, y in zip(a, b)])

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return RatPoly([-c for c in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return RatPoly([c * other for c in self.coeffs])
        if self.is_zero or other.is_zero:
            return RatPoly([])
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return RatPoly(out)

    __rmul__ = __mul__

    def __divmod__(self, other: "RatPoly"):
        if other.is_zero:
            raise ZeroDivisionError("division by the zero polynomial")
        r = list(self.coeffs)
        d = list(other.coeffs)
        q = [Fraction(0)] * max(0, len(r) - len(d) + 1)
        inv_lead = 1 / d[-1]
        for k in range(len(r) - len(d), -1, -1):
            c = r[k + len(d) - 1] * inv_lead
            q[k] = c
            if c:
                for j, dj in enumerate(d):
                    r[k + j] -= c * dj
        return RatPoly(q), RatPoly(r)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __call__(self, x) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "RatPoly":
        return RatPoly([j * c for j, c in enumerate(self.coeffs)][1:])

    def monic(self) -> "RatPoly":
        if self.is_zero:
            return self
        return RatPoly([c / self.leading for c in self.coeffs])

    def compose_scale(self, a) -> "RatPoly":
        """p(a*X) for a scalar a."""
        a = Fraction(a)
        return RatPoly([c * a**j for j, c in enumerate(self.coeffs)])

    def integer_coeffs(self) -> list[int]:
        """Coefficients as ints; raises if any is not integral."""
        out = []
        for c in self.coeffs:
            if c.denominator != 1:
                raise ValueError(f"non-integer coefficient {c}")
            out.append(c.numerator)
        return out

    def primitive_integer(self) -> "RatPoly":
        """Clear denominators and divide out the integer content."""
        if self.is_zero:
            return self
        den = reduce(lcm, (c.denominator for c in self.coeffs), 1)
        ints = [int(c * den) for c in self.coeffs]
        g = reduce(gcd, ints)
        return RatPoly([Fraction(v // g) for v in ints])


def poly_gcd(f: RatPoly, g: RatPoly) -> RatPoly:
    """Monic gcd over Q by the Euclidean algorithm."""
    a, b = f, g
    while not b.is_zero:
        a, b = b, a % b
    return a.monic() if not a.is_zero else a


def squarefree_part(f: RatPoly) -> RatPoly:
    """The radical f / gcd(f, f'), monic."""
    if f.degree < 1:
        return f.monic()
    g = poly_gcd(f, f.derivative())
    return (f // g).monic()


def squarefree_multiplicities(f: RatPoly) -> list[tuple[RatPoly, int]]:
    """Yun decomposition: pairs (g_i, i) with f ~ prod g_i^i, g_i squarefree
    and pairwise coprime."""
    f = f.monic()
    out: list[tuple[RatPoly, int]] = []
    if f.degree < 1:
        return out
    a = poly_gcd(f, f.derivative())
    b = f // a
    c = f.derivative() // a
    d = c - b.derivative()
    i = 1
    while b.degree >= 1:
        g = poly_gcd(b, d)
        if g.degree >= 1:
            out.append((g, i))
        b2 = b // g
        c2 = d // g
        d = c2 - b2.derivative()
        b = b2
        i += 1
    return out


def resultant(f: RatPoly, g: RatPoly) -> Fraction:
    """Res(f, g) with the convention lc(f)^deg(g) * prod g(alpha_i) over the
    roots alpha_i of f, via the Euclidean recursion.

    Res(f, g) = 0 exactly when f and g share a root.
    """
    if f.is_zero or g.is_zero:
        raise ValueError("resultant of the zero polynomial is undefined")
    if f.degree == 0:
        return f.coeffs[0] ** g.degree
    if g.degree == 0:
        return g.coeffs[0] ** f.degree
    r = f % g
    if r.is_zero:
        return Fraction(0)
    sign = -1 if (f.degree * g.degree) % 2 else 1
    return sign * g.leading ** (f.degree - r.degree) * resultant(g, r)


def sylvester_resultant(f: RatPoly, g: RatPoly) -> Fraction:
    """Resultant via the Sylvester determinant (fraction-free Gauss).

    Independent of :func:`resultant`; kept as the cross-check oracle.
    """
    m, n = f.degree, g.degree
    if m < 0 or n < 0:
        raise ValueError("resultant of the zero polynomial is undefined")
    if m == 0:
        return f.coeffs[0] ** n
    if n == 0:
        return g.coeffs[0] ** m
    size = m + n
    rows = []
    fc = list(reversed(f.coeffs))
    gc = list(reversed(g.coeffs))
    for i in range(n):
        rows.append([Fraction(0)] * i + fc + [Fraction(0)] * (size - i - m - 1))
    for i in range(m):
        rows.append([Fraction(0)] * i + gc + [Fraction(0)] * (size - i - n - 1))
    det = Fraction(1)
    for col in range(size):
        pivot = next((r for r in range(col, size) if rows[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            rows[col], rows[pivot] = rows[pivot], rows[col]
            det = -det
        det *= rows[col][col]
        inv = 1 / rows[col][col]
        for r in range(col + 1, size):
            factor = rows[r][col] * inv
            if factor:
                for c in range(col, size):
                    rows[r][c] -= factor * rows[col][c]
    return det


def lagrange_interpolate(points: list[tuple[int, Fraction]]) -> RatPoly:
    """The unique polynomial of degree < len(points) through the points."""
    out = RatPoly([])
    for i, (xi, yi) in enumerate(points):
        if yi == 0:
            continue
        num = RatPoly([1])
        den = Fraction(1)
        for j, (xj, _) in enumerate(points):
            if i == j:
                continue
            num = num * RatPoly([-xj, 1])
            den *= xi - xj
        out = out + num * (yi / den)
    return out


def ratio_resultant(g: RatPoly) -> RatPoly:
    """h(y) = Res_x(g(x), g(x*y)), whose roots are the ratios of roots of g.

    Computed by evaluation at d^2 + 1 integer points and interpolation, which
    keeps everything in univariate arithmetic.
    """
    d = g.degree
    bound = d * d
    points: list[tuple[int, Fraction]] = []
    y = 2
    while len(points) <= bound:
        points.append((y, resultant(g, g.compose_scale(y))))
        y += 1
    return lagrange_interpolate(points)


@cache
def cyclotomic(k: int) -> RatPoly:
    """The k-th cyclotomic polynomial, by iterated exact division."""
    f = RatPoly([-1] + [0] * (k - 1) + [1])  # X^k - 1
    for d in range(1, k):
        if k % d == 0:
            f = f // cyclotomic(d)
    return f


_SCREEN_PRIME = (1 << 61) - 1  # Mersenne prime, far beyond any honest collision


def root_of_unity_ratio_order(g: RatPoly) -> int:
    """lcm of the orders of all root-of-unity ratios of distinct roots of g.

    Works on the squarefree part, so repeated roots never contribute; returns
    1 when no ratio of distinct roots is a root of unity.

    h(y) = Res_x(rad(x), rad(x y)) has integer coefficients, so cyclotomic
    divisibility is screened modulo a large prime first (Gauss: a true factor
    survives reduction), and only screen hits pay for the exact gcd.
    """
    rad = squarefree_part(g)
    d = rad.degree
    if d <= 1:
        return 1
    bound = d * d
    candidates = [k for k in range(2, 2 * bound * bound + 1) if _euler_phi(k) <= bound]
    hbar = _ratio_resultant_mod(rad, _SCREEN_PRIME)
    h_exact: RatPoly | None = None
    orders = [1]
    for k in candidates:
        if hbar is not None:
            phibar = [c % _SCREEN_PRIME for c in cyclotomic(k).integer_coeffs()]
            if _poly_gcd_degree_mod(hbar, phibar, _SCREEN_PRIME) < 1:
                continue
        if h_exact is None:
            h_exact = ratio_resultant(rad)
        if poly_gcd(h_exact, cyclotomic(k)).degree >= 1:
            orders.append(k)
    return reduce(lcm, orders)


def _ratio_resultant_mod(rad: RatPoly, q: int) -> list[int] | None:
    """h(y) = Res_x(rad(x), rad(x y)) mod q by evaluation/interpolation, or
    None when q interferes (vanishing leading coefficient or h = 0 mod q)."""
    ints = [c % q for c in rad.primitive_integer().integer_coeffs()]
    d = len(ints) - 1
    if ints[-1] == 0:
        return None
    npts = d * d + 1
    xs = list(range(npts))
    ys = []
    for y0 in xs:
        scaled = [c * pow(y0, j, q) % q for j, c in enumerate(ints)]
        ys.append(_resultant_mod(ints, scaled, q))
    h = _lagrange_mod(xs, ys, q)
    if all(c == 0 for c in h):
        return None
    return h


def _resultant_mod(f: list[int], g: list[int], q: int) -> int:
    """Resultant of two polynomials over F_q (Euclidean recursion)."""

    def deg(a):
        d = len(a) - 1
        while d >= 0 and a[d] == 0:
            d -= 1
        return d

    f = f[: deg(f) + 1]
    g = g[: deg(g) + 1]
    if not f or not g:
        return 0
    res = 1
    while True:
        df, dg = len(f) - 1, len(g) - 1
        if dg == 0:
            return res * pow(g[0], df, q) % q
        # r = f mod g
        r = list(f)
        inv = pow(g[-1], -1, q)
        for k in range(df - dg, -1, -1):
            c = r[k + dg] * inv % q
            if c:
                for j in range(dg + 1):
                    r[k + j] = (r[k + j] - c * g[j]) % q
        dr = deg(r)
        if dr < 0:
            return 0
        r = r[: dr + 1]
        if (df * dg) % 2:
            res = -res % q
        res = res * pow(g[-1], df - dr, q) % q
        f, g = g, r


def _poly_gcd_degree_mod(a: list[int], b: list[int], q: int) -> int:
    def deg(x):
        d = len(x) - 1
        while d >= 0 and x[d] == 0:
            d -= 1
        return d

    a = a[: deg(a) + 1]
    b = b[: deg(b) + 1]
    while b:
        da, db = len(a) - 1, len(b) - 1
        if da < db:
            a, b = b, a
            continue
        r = list(a)
        inv = pow(b[-1], -1, q)
        for k in range(da - db, -1, -1):
            c = r[k + db] * inv % q
            if c:
                for j in range(db + 1):
                    r[k + j] = (r[k + j] - c * b[j]) % q
        dr = deg(r)
        a, b = b, r[: dr + 1] if dr >= 0 else []
    return len(a) - 1


def _lagrange_mod(xs: list[int], ys: list[int], q: int) -> list[int]:
    n = len(xs)
    out = [0] * n
    for i in range(n):
        if ys[i] == 0:
            continue
        num = [1]
        den = 1
        for j in range(n):
            if i == j:
                continue
            # num *= (X - xs[j])
            num = [(-xs[j] * num[0]) % q] + [
                (num[k - 1] - xs[j] * num[k]) % q for k in range(1, len(num))
            ] + [num[-1]]
            den = den * (xs[i] - xs[j]) % q
        inv = pow(den, -1, q) * ys[i] % q
        for k, c in enumerate(num):
            out[k] = (out[k] + c * inv) % q
    return out


def _euler_phi(n: int) -> int:
    out, m, p = 1, n, 2
    while p * p <= m:
        if m % p == 0:
            out *= p - 1
            m //= p
            while m % p == 0:
                out *= p
                m //= p
        p += 1
    if m > 1:
        out *= m - 1
    return out


def power_poly(g: RatPoly, M: int) -> RatPoly:
    """The monic degree-d polynomial whose roots are the M-th powers of the
    roots of g (with multiplicity), via Res_x(g(x), y - x^M)."""
    if M == 1:
        return g.monic()
    d = g.degree
    points: list[tuple[int, Fraction]] = []
    y = 0
    while len(points) <= d:
        # Res_x(g(x), y0 - x^M) = lc(g)^M * prod (y0 - alpha_i^M)
        val = resultant(g, RatPoly([y] + [0] * (M - 1) + [-1]))
        points.append((y, val))
        y += 1
    h = lagrange_interpolate(points)
    return h.monic()


def rational_roots(f: RatPoly) -> list[Fraction]:
    """All rational roots of f, by the rational root test on the primitive
    integer model."""
    if f.degree < 1:
        return []
    prim = f.primitive_integer()
    ints = prim.integer_coeffs()
    lead = abs(ints[-1])
    j = 0
    while ints[j] == 0:
        j += 1
    const = abs(ints[j])
    roots = [Fraction(0)] if j > 0 else []
    for a in _divisors(const):
        for b in _divisors(lead):
            if gcd(a, b) != 1:
                continue
            for cand in (Fraction(a, b), Fraction(-a, b)):
                if f(cand) == 0 and cand not in roots:
                    roots.append(cand)
    return sorted(roots)


def _divisors(n: int) -> list[int]:
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    return sorted(out)
