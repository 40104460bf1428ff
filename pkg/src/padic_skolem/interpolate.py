"""Prime selection, root lifting and assembly of the p-adic interpolants.

For a usable odd prime p the characteristic roots must all lie in Z_p as
units: rational roots (necessarily integers, the polynomial being monic) are
taken exactly, and the remaining factor must split into distinct linear
factors mod p so each residue lifts by Newton iteration.  With N the lcm of
the root orders mod p, every log L_i = log(lambda_i^N) has valuation >= 1 and
the subsequence u_{N n + l} extends to the analytic function

    f_l(x) = sum_i q_i(N x + l) * lambda_i^l * exp(x * L_i)

whose truncated power series this module produces, with the certified tail
bound (c, s), s = 1 - 1/(p-1).

When the Binet system loses digits (v_p of its determinant, only possible
with repeated roots or residue collisions), the series built here represent
p^scale * f_l for a fixed nonnegative ``scale``: same zeros, every valuation
shifted uniformly, all coefficients kept inside Z_p.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil, lcm

from .errors import PrecisionExhausted, SearchExhausted
from .lrs import Lrs
from .padic import PadicInt, factorial_valuation, int_valuation, padic_log
from .ratpoly import RatPoly, rational_roots, squarefree_multiplicities
from .series import PadicSeries
from ._kernels import convolve_trunc, scaled_add

DEFAULT_PRIME_CEILING = 50_000


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _factorize(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


@dataclass(frozen=True)
class RootPlan:
    """How the roots of the characteristic polynomial enter Z_p: exact
    integer roots, plus residues mod p to lift from the strictly split part."""

    exact: list[tuple[int, int]]  # (root, multiplicity)
    lift: list[tuple[RatPoly, int, list[int]]]  # (factor, multiplicity, residues mod p)


def prime_usable(g: RatPoly, u: Lrs, p: int) -> RootPlan | None:
    """Decide whether p supports the split-case machinery for u.

    Requirements: p odd; p does not divide the trailing recurrence
    coefficient (all roots must be units) nor any initial-value denominator;
    every non-rational part of the radical splits into distinct linear
    factors mod p.
    """
    if p < 3 or not _is_prime(p):
        return None
    if u.coeffs[0] % p == 0:
        return None
    if any(v.denominator % p == 0 for v in u.initial):
        return None
    exact: list[tuple[int, int]] = []
    lift: list[tuple[RatPoly, int, list[int]]] = []
    for factor, mult in squarefree_multiplicities(g):
        rr = rational_roots(factor)
        if any(r.denominator != 1 for r in rr):
            return None  # cannot happen for monic integer g; defensive
        for r in rr:
            exact.append((int(r), mult))
        rest = factor
        for r in rr:
            rest = rest // RatPoly([-r, 1])
        if rest.degree >= 1:
            residues = _distinct_roots_mod_p(rest, p)
            if residues is None:
                return None
            lift.append((rest, mult, residues))
    return RootPlan(exact=exact, lift=lift)


def _distinct_roots_mod_p(h: RatPoly, p: int) -> list[int] | None:
    """Residues of the roots of h mod p when h splits with distinct roots
    and all of them are units; None otherwise."""
    ints = h.primitive_integer().integer_coeffs()
    if ints[-1] % p == 0:
        return None  # leading coefficient drops mod p
    coeffs = [c % p for c in ints]
    roots = []
    for x in range(1, p):  # unit roots only
        acc = 0
        for c in reversed(coeffs):
            acc = (acc * x + c) % p
        if acc == 0:
            roots.append(x)
    if len(roots) != h.degree:
        return None
    # distinctness: h splits with deg(h) distinct roots iff we found them all
    return roots


def select_prime(
    g: RatPoly,
    u: Lrs,
    min_prime: int = 3,
    ceiling: int = DEFAULT_PRIME_CEILING,
) -> int:
    """Smallest usable odd prime >= min_prime, up to the ceiling."""
    p = max(3, min_prime)
    if p % 2 == 0:
        p += 1
    while p <= ceiling:
        if prime_usable(g, u, p) is not None:
            return p
        p += 2
        while p <= ceiling and not _is_prime(p):
            p += 2
    raise SearchExhausted(f"no usable prime in [{min_prime}, {ceiling}]")


def lift_root(h: RatPoly, residue: int, p: int, K: int) -> PadicInt:
    """Newton-lift a simple root of h from its residue mod p to mod p^K."""
    ints = h.primitive_integer().integer_coeffs()
    x = residue
    prec = 1
    while prec < K:
        prec = min(2 * prec, K)
        m = p**prec
        fx = 0
        for c in reversed(ints):
            fx = (fx * x + c) % m
        dx = 0
        for j in range(len(ints) - 1, 0, -1):
            dx = (dx * x + j * ints[j]) % m
        x = (x - fx * pow(dx, -1, m)) % m
    return PadicInt(p, K, x)


@dataclass(frozen=True)
class LiftedRoot:
    value: PadicInt
    multiplicity: int
    exact: int | None  # set when the root is a rational integer


def lift_roots(plan: RootPlan, p: int, K: int) -> list[LiftedRoot]:
    out = [
        LiftedRoot(PadicInt(p, K, r), mult, r) for r, mult in plan.exact
    ]
    for factor, mult, residues in plan.lift:
        for r in residues:
            out.append(LiftedRoot(lift_root(factor, r, p, K), mult, None))
    return out


def multiplicative_order(x: int, p: int, factored: dict[int, int] | None = None) -> int:
    """Order of the unit x in (Z/p)^*."""
    if factored is None:
        factored = _factorize(p - 1)
    t = p - 1
    for q in factored:
        while t % q == 0 and pow(x, t // q, p) == 1:
            t //= q
    return t


def compute_period(roots: list[LiftedRoot], p: int) -> int:
    """N = lcm of the multiplicative orders of the roots mod p; N | p-1."""
    factored = _factorize(p - 1)
    N = 1
    for r in roots:
        N = lcm(N, multiplicative_order(r.value.residue % p, p, factored))
    return N


@dataclass
class BinetData:
    """Coefficient polynomials of the exponential-sum form of the sequence:
    u_n = p^{-scale} * sum_i q_i(n) * lambda_i^n with the q_i stored scaled
    by p^scale so everything stays in Z_p."""

    roots: list[LiftedRoot]
    q_coeffs: list[list[PadicInt]]  # q_coeffs[i][t], degree < multiplicity_i
    scale: int
    cert_precision: int


def _solve_fraction_system(A: list[list[Fraction]], b: list[Fraction]) -> tuple[list[Fraction], Fraction]:
    """Exact Gaussian elimination; returns (solution, determinant)."""
    n = len(A)
    m = [row[:] + [b[i]] for i, row in enumerate(A)]
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            return [], Fraction(0)
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        det *= m[col][col]
        inv = 1 / m[col][col]
        m[col] = [v * inv for v in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return [m[i][n] for i in range(n)], det


def binet_coeffs(u: Lrs, roots: list[LiftedRoot], p: int, K: int) -> BinetData:
    """Solve the confluent Vandermonde system for the q_i against
    u_0..u_{d-1}, entirely in exact arithmetic on integer lifts.

    Certified at K - v_p(det) digits; the postcondition
    sum q_i(n) lambda_i^n = p^scale * u_n (mod p^cert) holds for n <= 4d and
    is re-checked here.
    """
    d = u.order
    cols: list[tuple[int, int]] = []  # (root index, power t)
    for i, r in enumerate(roots):
        for t in range(r.multiplicity):
            cols.append((i, t))
    if len(cols) != d:
        raise ValueError("root multiplicities do not sum to the order")
    lifts = [r.exact if r.exact is not None else r.value.residue for r in roots]
    A = []
    for n in range(d):
        row = []
        for i, t in enumerate(cols):
            ri, tt = t
            row.append(Fraction(n**tt * lifts[ri] ** n))
        A.append(row)
    sol, det = _solve_fraction_system(A, [u.term(n) for n in range(d)])
    if det == 0:
        raise PrecisionExhausted("Binet system singular at this precision")
    v_det = 0 if det.numerator % p else int_valuation(det.numerator, p)
    v_det -= 0 if det.denominator % p else int_valuation(det.denominator, p)
    if v_det < 0:
        v_det = 0
    cert = K - v_det
    if cert < 4:
        raise PrecisionExhausted(f"determinant absorbs {v_det} of {K} digits")
    scale = 0
    for x in sol:
        if x == 0:
            continue
        vx = (int_valuation(x.numerator, p) if x.numerator % p == 0 else 0) - (
            int_valuation(x.denominator, p) if x.denominator % p == 0 else 0
        )
        scale = max(scale, -vx)
    q_coeffs: list[list[PadicInt]] = [[] for _ in roots]
    pscale = Fraction(p) ** scale
    for (ri, _t), x in zip(cols, sol):
        q_coeffs[ri].append(PadicInt.from_fraction(x * pscale, p, cert))
    data = BinetData(roots=roots, q_coeffs=q_coeffs, scale=scale, cert_precision=cert)
    _check_reconstruction(u, data, p)
    return data


def _check_reconstruction(u: Lrs, data: BinetData, p: int):
    cert = data.cert_precision
    m = p**cert
    d = sum(r.multiplicity for r in data.roots)
    for n in range(4 * d + 1):
        acc = 0
        for root, qc in zip(data.roots, data.q_coeffs):
            lift = root.exact if root.exact is not None else root.value.residue
            qn = 0
            for t, c in enumerate(qc):
                qn += c.residue * n**t
            acc = (acc + qn * pow(lift, n, m)) % m
        want = PadicInt.from_fraction(u.term(n) * Fraction(p) ** data.scale, p, cert)
        if acc % m != want.residue:
            raise PrecisionExhausted(f"Binet reconstruction failed at n={n}")


@dataclass
class InterpolationContext:
    """Everything needed to produce and evaluate the interpolants of one
    non-degenerate sequence at one prime."""

    lrs: Lrs
    prime: int
    precision: int  # working digits for roots and logs
    period: int
    plan: RootPlan
    roots: list[LiftedRoot]
    logs: list[PadicInt]
    binet: BinetData
    scale: int
    tail_c: int
    tail_s: Fraction
    trunc_degree: int
    _exp_series: list[list[int]] = field(default_factory=list, repr=False)
    _interpolants: dict[int, PadicSeries] = field(default_factory=dict, repr=False)

    @property
    def cert_precision(self) -> int:
        return self.binet.cert_precision

    def embed(self, x) -> PadicInt:
        return PadicInt.from_fraction(Fraction(x), self.prime, self.cert_precision)

    def scaled_term(self, n: int) -> PadicInt:
        """p^scale * u_n embedded, the value the interpolants compute."""
        return self.embed(self.lrs.term(n) * Fraction(self.prime) ** self.scale)

    def interpolant(self, ell: int) -> PadicSeries:
        if ell not in self._interpolants:
            self._interpolants[ell] = build_interpolant(self, ell)
        return self._interpolants[ell]


def _exp_coefficients(L: PadicInt, degree: int, cert: int) -> list[int]:
    """Residues of L^k / k! mod p^cert for k = 0..degree (v(L) >= 1)."""
    p = L.prime
    m = p**cert
    if L.residue == 0:
        return [1] + [0] * degree
    W = factorial_valuation(degree, p)
    bigmod = p ** (cert + W)
    out = [1]
    xp = 1
    fact_w = 0
    fact_odd = 1
    lift = L.residue
    for k in range(1, degree + 1):
        xp = xp * lift % bigmod
        w = int_valuation(k, p) if k % p == 0 else 0
        fact_w += w
        fact_odd = fact_odd * (k // p**w) % m
        out.append((xp // p**fact_w) * pow(fact_odd, -1, m) % m)
    return out


def build_context(u: Lrs, p: int, K: int) -> InterpolationContext:
    """Lift roots, compute the period and logs, solve for the Binet data and
    fix the truncation degree.  Raises PrecisionExhausted when K is too small
    (the driver doubles K and retries) and ValueError when p is unusable."""
    g = u.char_poly()
    plan = prime_usable(g, u, p)
    if plan is None:
        raise ValueError(f"prime {p} does not support the split-case machinery for this sequence")
    roots = lift_roots(plan, p, K)
    N = compute_period(roots, p)
    logs = [padic_log(r.value**N) for r in roots]
    binet = binet_coeffs(u, roots, p, K)
    cert = binet.cert_precision
    J = max(r.multiplicity for r in roots) - 1
    s = Fraction(p - 2, p - 1)
    tail_c = -J
    D = ceil(Fraction(cert - tail_c) / s) - 1
    ctx = InterpolationContext(
        lrs=u,
        prime=p,
        precision=K,
        period=N,
        plan=plan,
        roots=roots,
        logs=logs,
        binet=binet,
        scale=binet.scale,
        tail_c=tail_c,
        tail_s=s,
        trunc_degree=D,
    )
    ctx._exp_series = [_exp_coefficients(L.reduce(min(K, cert)), D, cert) for L in logs]
    return ctx


def build_interpolant(ctx: InterpolationContext, ell: int) -> PadicSeries:
    """Assemble sum_i q_i(N x + ell) * lambda_i^ell * exp(x L_i) as a series
    in x, truncated at the context degree with the certified tail bound."""
    if not 0 <= ell < ctx.period:
        raise ValueError(f"ell must be in [0, {ctx.period}), got {ell}")
    p = ctx.prime
    cert = ctx.cert_precision
    m = p**cert
    D = ctx.trunc_degree
    acc = [0] * (D + 1)
    for i, root in enumerate(ctx.roots):
        lift = root.exact if root.exact is not None else root.value.residue
        lam_ell = pow(lift, ell, m)
        qc = ctx.binet.q_coeffs[i]
        # q_i(N x + ell) by Horner on polynomials in x
        pol = [0]
        for c in reversed(qc):
            pol = _poly_affine_step(pol, ctx.period, ell, c.residue, m)
        pol = [(v * lam_ell) % m for v in pol]
        if len(pol) == 1:
            scaled_add(acc, ctx._exp_series[i], pol[0], m)
        else:
            piece = convolve_trunc(pol, ctx._exp_series[i], m, D + 1)
            scaled_add(acc, piece, 1, m)
    return PadicSeries(p, cert, acc, ctx.tail_c, ctx.tail_s)


def _poly_affine_step(pol: list[int], N: int, ell: int, c: int, m: int) -> list[int]:
    """pol * (N x + ell) + c, all modulo m."""
    out = [0] * (len(pol) + 1)
    for j, v in enumerate(pol):
        if v:
            out[j] = (out[j] + v * ell) % m
            out[j + 1] = (out[j + 1] + v * N) % m
    out[0] = (out[0] + c) % m
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out
