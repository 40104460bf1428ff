"""End-to-end pipeline: decompose, pick a prime, search every interpolant,
classify the zeros and assemble the report.

Classification of a zero z of the interpolant at shift l (period N):

* the recovered index is t = N z + l;
* ``integer``: z and t are integers and the exact term at t is 0 (this leg is
  always unconditional, the term evaluation being exact rational arithmetic);
* ``twisted``: t is an integer but the exact term at t is nonzero, so the
  analytic extension vanishes at an index where the sequence does not;
* ``rational``: z is rational, t is not an integer;
* ``hensel-unknown``: certified simple zero with no rational reconstruction
  at the height ceiling; reported with its digit expansion.

Conditional flags mark exactly the claims whose verification is
valuation-level only: that a non-integer rational point is a zero, and that
intermediate derivatives vanish at a multiple zero.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field, replace
from fractions import Fraction
from math import isqrt

from .errors import (
    IdenticallyZero,
    NeedMorePrecision,
    SearchExhausted,
    SkolemError,
)
from .interpolate import (
    DEFAULT_PRIME_CEILING,
    InterpolationContext,
    build_context,
    prime_usable,
    select_prime,
)
from .lattice import bounded_kernel_vectors
from .lrs import ZERO_SENTINEL, Lrs, degeneracy_decompose, lrs_add, lrs_mul, lrs_scale, minimize
from .padic import PadicInt, int_valuation, rational_reconstruct
from .ratpoly import resultant
from .search import (
    HenselZero,
    RationalTest,
    RationalZero,
    ResidueNode,
    SearchConfig,
    hensel_only_search,
    zero_search,
)
from .series import hensel_condition, hensel_refine


class UnusablePrime(SkolemError):
    """The requested prime fails the split-case validation."""


@dataclass(frozen=True)
class DriverOptions:
    prime: int | None = None
    min_prime: int = 3
    prime_ceiling: int = DEFAULT_PRIME_CEILING
    mode: str = "full"  # "full" | "hensel"
    precision: int = 32
    precision_ceiling: int = 4096
    max_depth: int = 64
    height_cap: int = 10**6
    expand: int = 3
    timeout: float | None = None  # seconds of wall clock
    relation_bound: int = 0
    self_check_terms: int = 0  # extra interpolant consistency checks per l


@dataclass(frozen=True)
class ZeroRecord:
    ell: int
    kind: str  # integer | rational | twisted | hensel-unknown
    value: Fraction | None  # recovered index N*z + ell
    zero: Fraction | None  # z itself when rational
    multiplicity: int
    digits: tuple[int, ...]
    certificate: tuple[int, int] | None  # Hensel pair (y, nu)
    conditional: bool

    def sort_key(self):
        return (self.ell, self.digits)


@dataclass(frozen=True)
class UnresolvedBall:
    ell: int
    center: int
    depth: int
    count: int  # -1 when the ball was never examined (timeout / precision)
    accounted: int


@dataclass
class ZeroReport:
    prime: int
    period: int
    mode: str
    precision: int
    records: list[ZeroRecord]
    unresolved: list[UnresolvedBall]
    zero_progressions: list[tuple[int, int]]  # (residue, modulus)
    discarded_mass: dict[int, int]
    schanuel_conditional: bool
    status: str  # complete | partial
    relations: list | None = None

    @property
    def integer_zeros(self) -> list[int]:
        return sorted(int(r.value) for r in self.records if r.kind == "integer")

    def tuples(self) -> list[tuple]:
        """(z or digit-prefix, ell) pairs in report order."""
        out = []
        for r in self.records:
            out.append((r.zero if r.zero is not None else tuple(r.digits), r.ell))
        return out


@dataclass
class RelationLattice:
    modulus_digits: int
    vectors: list[tuple[int, ...]]
    status: list[str]  # per vector: "verified(2K)" | "rejected(2K)"


# ---------------------------------------------------------------------------
# rational zero verification


def rational_zero_verify(ctx: InterpolationContext, ell: int, a: int, b: int) -> RationalTest:
    """Decide whether a/b is a zero of the interpolant at shift ell.

    b = 1 routes through exact term evaluation (unconditional both ways).
    b > 1 evaluates the series: a finite valuation is an unconditional
    NotZero witness; an all-zero residue certifies the zero to the working
    precision only.
    """
    if b == 1:
        t = ctx.lrs.term(ctx.period * a + ell)
        if t == 0:
            return RationalTest("zero_exact", None)
        v = _fraction_valuation(t, ctx.prime) + ctx.scale
        return RationalTest("not_zero", v)
    x = ctx.embed(Fraction(a, b))
    v = ctx.interpolant(ell).eval(x).valuation()
    if v.is_finite:
        return RationalTest("not_zero", v.bound)
    return RationalTest("zero_valuation", v.bound)


def _fraction_valuation(x: Fraction, p: int) -> int:
    v = int_valuation(x.numerator, p) if x.numerator % p == 0 else 0
    if x.denominator % p == 0:
        v -= int_valuation(x.denominator, p)
    return v


# ---------------------------------------------------------------------------
# escalation for suspected multiple zeros


@dataclass(frozen=True)
class Escalation:
    level: int  # j: certified simple zero of the (j-1)-th derivative
    refined: PadicInt
    certificate: tuple[int, int]


def escalate_multiplicity(
    ctx: InterpolationContext,
    ell: int,
    node: ResidueNode,
    cfg: SearchConfig,
    extra_depth: int = 6,
) -> Escalation | None:
    """Hunt for a multiplicity-j zero inside a stuck ball by certifying a
    simple zero of the (j-1)-th derivative, j = 2 .. outstanding count.

    The claim that the lower derivatives vanish there stays conditional;
    the simple-zero certificate on the derivative is unconditional.
    """
    f = ctx.interpolant(ell)
    outstanding = node.count - node.accounted
    derivs = [f]
    for _ in range(outstanding):
        derivs.append(derivs[-1].derivative())
    p = ctx.prime
    for j in range(2, outstanding + 1):
        g = derivs[j - 1]
        gp = derivs[j]
        centers = [(node.center, node.depth)]
        for _ in range(extra_depth):
            next_centers = []
            for z, r in centers:
                step = p**r
                for a in range(p):
                    z1 = z + a * step
                    fz = f.eval(PadicInt(p, f.eval_precision(), z1))
                    vf = fz.valuation()
                    if vf.is_finite and vf.bound < r + 1:
                        continue  # multiple zero of f must sit where f vanishes deeply
                    gz = g.eval(PadicInt(p, g.eval_precision(), z1))
                    gpz = gp.eval(PadicInt(p, gp.eval_precision(), z1))
                    ok, t = hensel_condition(gz, gpz)
                    if ok:
                        refined = hensel_refine(g, PadicInt(p, g.eval_precision(), z1), fprime=gp)
                        if _vanishes_through(derivs, j - 1, refined):
                            return Escalation(level=j, refined=refined, certificate=(z1, t + 1))
                    next_centers.append((z1, r + 1))
            centers = next_centers
            if not centers:
                break
    return None


def _vanishes_through(derivs, j: int, x: PadicInt) -> bool:
    """f, f', ..., f^{(j-1)} all vanish to precision at x."""
    return all(not derivs[i].eval(x).valuation().is_finite for i in range(j))


# ---------------------------------------------------------------------------
# relation screening


def relation_screen(ctx: InterpolationContext, bound: int) -> RelationLattice:
    """Integer vectors k with |k_i| <= bound and sum k_i L_i = 0 to working
    precision, each re-screened at doubled precision.

    Survivors are probable multiplicative relations among the roots; they
    annotate the report and play no role in the search itself.
    """
    from .interpolate import lift_roots
    from .padic import padic_log

    p = ctx.prime
    K = ctx.precision
    slack = 1
    q = p
    while q <= bound * max(1, len(ctx.logs)):
        q *= p
        slack += 1
    modulus = p ** (K - slack)
    logs = [L.residue % modulus for L in ctx.logs]
    cands = bounded_kernel_vectors(logs, modulus, bound)
    vectors, status = [], []
    if cands:
        K2 = 2 * K
        roots2 = lift_roots(ctx.plan, p, K2)
        logs2 = [padic_log(r.value**ctx.period) for r in roots2]
        mod2 = p ** (K2 - slack)
        for k in cands:
            tot = sum(ki * L.residue for ki, L in zip(k, logs2)) % mod2
            vectors.append(k)
            status.append("verified(2K)" if tot == 0 else "rejected(2K)")
    return RelationLattice(modulus_digits=K - slack, vectors=vectors, status=status)


# ---------------------------------------------------------------------------
# the driver


@dataclass
class _SubTask:
    offset: int  # j: indices M n + j of the original sequence
    lrs: Lrs
    ctx: InterpolationContext | None = None


def find_padic_zeros(u: Lrs, opts: DriverOptions | None = None) -> ZeroReport:
    """Compute all p-adic zeros of u (Hensel-certified or rational), with
    classification against the exact sequence.

    Raises IdenticallyZero for the zero sequence, UnusablePrime when a forced
    prime fails validation, SearchExhausted when no prime works below the
    ceiling.  Caps and timeouts surface as status "partial" with the
    unresolved balls listed, never as missing mass.
    """
    opts = opts or DriverOptions()
    deadline = time.monotonic() + opts.timeout if opts.timeout else None
    u = minimize(u)
    if u is ZERO_SENTINEL or u.is_identically_zero():
        raise IdenticallyZero("input sequence is identically zero")
    M, subs = degeneracy_decompose(u)
    zero_progs = [(j, M) for j, s in subs if s.is_identically_zero()]
    tasks = [_SubTask(j, s) for j, s in subs if not s.is_identically_zero()]
    p = _choose_prime(u, tasks, opts)
    K = max(opts.precision, opts.expand + 8, 16)
    while True:
        try:
            report = _run_at_precision(u, tasks, M, zero_progs, p, K, opts, deadline, lenient=False)
            break
        except NeedMorePrecision:
            if 2 * K > opts.precision_ceiling:
                report = _run_at_precision(u, tasks, M, zero_progs, p, K, opts, deadline, lenient=True)
                break
            K *= 2
    return report


def _choose_prime(u: Lrs, tasks: list[_SubTask], opts: DriverOptions) -> int:
    if opts.prime is not None:
        for task in tasks:
            if prime_usable(task.lrs.char_poly(), task.lrs, opts.prime) is None:
                raise UnusablePrime(
                    f"prime {opts.prime} does not split the characteristic roots into Z_p units"
                )
        return opts.prime
    p = max(3, opts.min_prime)
    while p <= opts.prime_ceiling:
        if all(prime_usable(t.lrs.char_poly(), t.lrs, p) is not None for t in tasks):
            return p
        p = _next_odd_prime(p)
    raise SearchExhausted(f"no usable prime in [{opts.min_prime}, {opts.prime_ceiling}]")


def _next_odd_prime(p: int) -> int:
    from .interpolate import _is_prime

    p += 2 if p % 2 == 1 else 1
    while not _is_prime(p):
        p += 2
    return p


def _run_at_precision(
    u: Lrs,
    tasks: list[_SubTask],
    M: int,
    zero_progs: list[tuple[int, int]],
    p: int,
    K: int,
    opts: DriverOptions,
    deadline: float | None,
    lenient: bool,
) -> ZeroReport:
    tasks = [replace(t, ctx=build_context(t.lrs, p, K)) for t in tasks]
    period_eff = M * tasks[0].ctx.period
    cfg = SearchConfig(
        max_depth=opts.max_depth,
        rational=(opts.mode == "full"),
        height_cap=opts.height_cap,
        deadline=deadline,
    )
    records: list[ZeroRecord] = []
    unresolved: list[UnresolvedBall] = []
    discarded: dict[int, int] = {}
    status = "complete"
    conditional_any = False
    for task in tasks:
        ctx = task.ctx
        if opts.self_check_terms:
            verify_interpolants(ctx, opts.self_check_terms)
        for ell in range(ctx.period):
            ell_eff = M * ell + task.offset
            if deadline is not None and time.monotonic() > deadline:
                status = "partial"
                unresolved.append(UnresolvedBall(ell_eff, 0, 0, -1, 0))
                continue
            try:
                recs, unres, disc, part = _search_one(ctx, ell, ell_eff, period_eff, cfg, opts, u)
            except NeedMorePrecision:
                if not lenient:
                    raise
                status = "partial"
                unresolved.append(UnresolvedBall(ell_eff, 0, 0, -1, 0))
                continue
            records.extend(recs)
            unresolved.extend(unres)
            if disc:
                discarded[ell_eff] = disc
            if part:
                status = "partial"
    records.sort(key=lambda r: r.sort_key())
    conditional_any = any(r.conditional for r in records)
    report = ZeroReport(
        prime=p,
        period=period_eff,
        mode=opts.mode,
        precision=K,
        records=records,
        unresolved=sorted(unresolved, key=lambda b: (b.ell, b.center)),
        zero_progressions=zero_progs,
        discarded_mass=discarded,
        schanuel_conditional=conditional_any,
        status="partial" if (status == "partial" or unresolved) else "complete",
    )
    if opts.relation_bound:
        report.relations = [
            (task.offset, relation_screen(task.ctx, opts.relation_bound)) for task in tasks
        ]
    return report


def _search_one(
    ctx: InterpolationContext,
    ell: int,
    ell_eff: int,
    period_eff: int,
    cfg: SearchConfig,
    opts: DriverOptions,
    original: Lrs,
):
    """Search one interpolant and classify everything found."""
    f = ctx.interpolant(ell)

    def tester(a: int, b: int) -> RationalTest:
        return rational_zero_verify(ctx, ell, a, b)

    if cfg.rational:
        res = zero_search(f, cfg, tester)
    else:
        res = hensel_only_search(f, cfg)
    records: list[ZeroRecord] = []
    partial = res.status == "partial"
    unres_nodes = list(res.unresolved)
    if cfg.rational and unres_nodes:
        still = []
        for node in unres_nodes:
            esc = escalate_multiplicity(ctx, ell, node, cfg)
            if esc is None:
                still.append(node)
                continue
            records.append(_classify_escalation(ctx, ell, ell_eff, period_eff, esc, opts, original))
            if node.accounted + esc.level >= node.count:
                continue  # fully accounted now
            still.append(replace(node, accounted=node.accounted + esc.level))
        unres_nodes = still
        partial = bool(still) or partial
    for rz in res.rational:
        records.append(_classify_rational(ctx, ell_eff, period_eff, rz, opts, original))
    for h in res.hensel:
        records.append(_classify_hensel(ctx, ell, ell_eff, period_eff, h, opts, original))
    unresolved = [
        UnresolvedBall(ell_eff, n.center, n.depth, n.count, n.accounted) for n in unres_nodes
    ]
    return records, unresolved, res.discarded, partial


def _digit_prefix(ctx: InterpolationContext, x, k: int) -> tuple[int, ...]:
    if k <= 0:
        return ()
    if isinstance(x, PadicInt):
        return tuple(x.digits(min(k, x.precision)))
    return tuple(ctx.embed(x).digits(k))


def _classify_value(
    ctx: InterpolationContext,
    ell_eff: int,
    period_eff: int,
    z: Fraction,
    original: Lrs,
) -> tuple[str, Fraction, bool]:
    """kind, recovered index, and whether the zero claim is unconditional."""
    t = period_eff * z + ell_eff
    if t.denominator == 1:
        exact = original.term(int(t))
        if exact == 0:
            return "integer", t, True
        return "twisted", t, True
    return "rational", t, False


def _classify_rational(ctx, ell_eff, period_eff, rz: RationalZero, opts, original) -> ZeroRecord:
    z = Fraction(rz.a, rz.b)
    kind, value, _ = _classify_value(ctx, ell_eff, period_eff, z, original)
    conditional = rz.certification != "exact" or rz.multiplicity > 1
    return ZeroRecord(
        ell=ell_eff,
        kind=kind,
        value=value,
        zero=z,
        multiplicity=rz.multiplicity,
        digits=_digit_prefix(ctx, z, opts.expand),
        certificate=None,
        conditional=conditional,
    )


def _classify_hensel(ctx, ell, ell_eff, period_eff, h: HenselZero, opts, original) -> ZeroRecord:
    pair = _reconstruct_and_verify(ctx, ell, h.refined, opts)
    if pair is not None:
        z, verdict = pair
        kind, value, _ = _classify_value(ctx, ell_eff, period_eff, z, original)
        conditional = verdict.kind != "zero_exact"
        return ZeroRecord(
            ell=ell_eff,
            kind=kind,
            value=value,
            zero=z,
            multiplicity=1,
            digits=_digit_prefix(ctx, z, opts.expand),
            certificate=(h.y, h.nu),
            conditional=conditional,
        )
    return ZeroRecord(
        ell=ell_eff,
        kind="hensel-unknown",
        value=None,
        zero=None,
        multiplicity=1,
        digits=_digit_prefix(ctx, h.refined, opts.expand),
        certificate=(h.y, h.nu),
        conditional=False,
    )


def _reconstruct_and_verify(ctx, ell, refined: PadicInt, opts) -> tuple[Fraction, RationalTest] | None:
    H = min(opts.height_cap, isqrt((refined.modulus - 1) // 2))
    pair = rational_reconstruct(refined, max(1, H))
    if pair is None:
        return None
    a, b = pair
    verdict = rational_zero_verify(ctx, ell, a, b)
    if not verdict.is_zero:
        return None
    return Fraction(a, b), verdict


def _classify_escalation(ctx, ell, ell_eff, period_eff, esc: Escalation, opts, original) -> ZeroRecord:
    pair = _reconstruct_and_verify(ctx, ell, esc.refined, opts)
    if pair is not None:
        z, _verdict = pair
        kind, value, _ = _classify_value(ctx, ell_eff, period_eff, z, original)
        return ZeroRecord(
            ell=ell_eff,
            kind=kind,
            value=value,
            zero=z,
            multiplicity=esc.level,
            digits=_digit_prefix(ctx, z, opts.expand),
            certificate=esc.certificate,
            conditional=True,  # the lower-derivative vanishing is precision-level
        )
    return ZeroRecord(
        ell=ell_eff,
        kind="hensel-unknown",
        value=None,
        zero=None,
        multiplicity=esc.level,
        digits=_digit_prefix(ctx, esc.refined, opts.expand),
        certificate=esc.certificate,
        conditional=True,
    )


def verify_interpolants(ctx: InterpolationContext, T: int = 25):
    """Consistency self-check f_l(n) = p^scale u_{Nn+l} for n = 0..T."""
    for ell in range(ctx.period):
        f = ctx.interpolant(ell)
        for n in range(T + 1):
            got = f.eval(ctx.embed(n))
            want = ctx.scaled_term(ctx.period * n + ell)
            if not got.congruent(want, min(got.precision, want.precision)):
                raise AssertionError(f"interpolant mismatch at ell={ell}, n={n}")


# ---------------------------------------------------------------------------
# simultaneous zeros


@dataclass
class SimultaneousReport:
    common_zeros: list[int]
    common_progressions: list[tuple[int, int]]
    screen_passed: bool
    prime: int
    combined: ZeroReport | None
    status: str


def simultaneous_skolem(u: Lrs, v: Lrs, opts: DriverOptions | None = None) -> SimultaneousReport:
    """Common integer zeros of u and v via the combined sequence
    w_n = v_n^2 + p u_n^2: for x in Z_p the interpolants satisfy
    f_w(x) = 0 iff f_u(x) = f_v(x) = 0, the two summands having valuations of
    opposite parity.  Every reported common zero is re-verified by exact term
    evaluation, so the output list is unconditional.
    """
    opts = opts or DriverOptions()
    u = minimize(u)
    v = minimize(v)
    if u.is_identically_zero() and v.is_identically_zero():
        return SimultaneousReport([], [(0, 1)], False, 0, None, "complete")
    screen = True
    if not u.is_identically_zero() and not v.is_identically_zero():
        screen = resultant(u.char_poly(), v.char_poly()) != 0
    p, w = _pick_simultaneous_prime(u, v, opts)
    report = find_padic_zeros(w, replace(opts, prime=p, mode="full"))
    common = []
    for rec in report.records:
        if rec.kind != "integer":
            continue
        m = int(rec.value)
        if u.term(m) == 0 and v.term(m) == 0:
            common.append(m)
        # a w-zero with nonzero u or v term is impossible over Q (sum of a
        # square and p times a square); keep the exact check as a guard
    return SimultaneousReport(
        common_zeros=sorted(set(common)),
        common_progressions=report.zero_progressions,
        screen_passed=screen,
        prime=p,
        combined=report,
        status=report.status,
    )


def _pick_simultaneous_prime(u: Lrs, v: Lrs, opts: DriverOptions) -> tuple[int, Lrs]:
    if u.is_identically_zero():
        base = [v]
    elif v.is_identically_zero():
        base = [u]
    else:
        base = [u, v]
    p = opts.prime if opts.prime is not None else max(3, opts.min_prime)
    while p <= opts.prime_ceiling:
        if all(prime_usable(x.char_poly(), x, p) is not None for x in base):
            w = lrs_add(lrs_mul(v, v), lrs_scale(lrs_mul(u, u), p))
            # w = 0 would force u = v = 0 pointwise, handled by the caller
            if prime_usable(w.char_poly(), w, p) is not None:
                return p, w
        if opts.prime is not None:
            raise UnusablePrime(f"prime {opts.prime} unusable for the combined sequence")
        p = _next_odd_prime(p)
    raise SearchExhausted(f"no usable prime below {opts.prime_ceiling} for the combined sequence")
