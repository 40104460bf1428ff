"""Residue-tree search for the zeros of a convergent series on Z_p.

The tree refines residue classes digit by digit.  Each ball carries its
Newton count (zeros in C_p with multiplicity); a ball closes when the zeros
already certified inside it account for the whole count.  Mass that never
meets an integer residue again belongs to C_p \\ Z_p and is reported as
``discarded``, never silently lost.

Certificates are unconditional: a Hensel pair (y, nu) pins a unique simple
zero in y + p^nu Z_p, and a NotZero verdict carries a finite-valuation
witness.  Only the claim that a valuation-certified rational actually *is* a
zero (its residue vanishes to the full working precision) is conditional, and
it is labelled as such.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field, replace

from .errors import AmbiguousValuation, PrecisionExhausted
from .padic import PadicInt, Valuation, rational_reconstruct
from .series import PadicSeries, hensel_condition, hensel_refine, newton_count


@dataclass(frozen=True)
class SearchConfig:
    max_depth: int = 64
    rational: bool = True  # False = Hensel-only variant
    height_cap: int = 10**6
    stall_depth: int = 8
    stall_rounds: int = 6
    deadline: float | None = None  # time.monotonic() value

    def timed_out(self) -> bool:
        return self.deadline is not None and time.monotonic() > self.deadline


@dataclass(frozen=True)
class HenselZero:
    """(y, nu): f has a unique simple zero z with z = y mod p^nu."""

    y: int
    nu: int
    t: int  # v_p(f'(y)); nu = t + 1
    refined: PadicInt


@dataclass(frozen=True)
class RationalZero:
    a: int
    b: int
    multiplicity: int
    certification: str  # "exact" | "valuation(<digits>)"
    embedded: PadicInt

    @property
    def conditional(self) -> bool:
        return self.certification != "exact" or self.multiplicity > 1


@dataclass(frozen=True)
class ResidueNode:
    """A live ball center mod p^depth with outstanding zero mass."""

    center: int
    depth: int
    count: int
    accounted: int
    stable_rounds: int = 0

    @property
    def outstanding(self) -> int:
        return self.count - self.accounted


@dataclass
class SearchResult:
    hensel: list[HenselZero]
    rational: list[RationalZero]
    unresolved: list[ResidueNode]
    discarded: int
    root_count: int
    status: str  # "complete" | "partial"


@dataclass(frozen=True)
class RationalTest:
    kind: str  # "not_zero" | "zero_exact" | "zero_valuation"
    detail: int | None = None  # valuation witness / certified digits

    @property
    def is_zero(self) -> bool:
        return self.kind != "not_zero"


def series_rational_tester(f: PadicSeries):
    """Valuation-only rational zero test straight off the series (used when
    no exact sequence backs the series, e.g. polynomial fixtures)."""

    def test(a: int, b: int) -> RationalTest:
        x = PadicInt.from_rational(a, b, f.prime, f.eval_precision())
        v = f.eval(x).valuation()
        if v.is_finite:
            return RationalTest("not_zero", v.bound)
        return RationalTest("zero_valuation", v.bound)

    return test


def multiplicity_at(f: PadicSeries, x: PadicInt, cap: int) -> tuple[int, bool]:
    """Smallest j with v(f^{(j)}(x)) finite at working precision.

    Returns (j, conditional): the j-th derivative being nonzero is
    unconditional; for j > 1 the vanishing of the intermediate derivatives is
    certified only to precision, hence conditional.  Raises
    AmbiguousValuation when every derivative up to ``cap`` vanishes.
    """
    g = f
    for j in range(cap + 1):
        if j > 0:
            g = g.derivative()
        if g.eval(x).valuation().is_finite:
            if j == 0:
                raise ValueError("multiplicity_at called on a non-zero point")
            return j, j > 1
    raise AmbiguousValuation(f"all derivatives up to {cap} vanish to precision at this point")


def _same_zero(a: PadicInt, nu_a: int, b: PadicInt, nu_b: int) -> bool:
    """Two certified zeros coincide when either uniqueness ball contains the
    other zero; agreement modulo p^min(nu) decides that."""
    k = min(nu_a, nu_b)
    q = a.prime**k
    return a.residue % q == b.residue % q


class _Search:
    def __init__(self, f: PadicSeries, cfg: SearchConfig, tester=None):
        self.f = f
        self.cfg = cfg
        self.tester = tester if tester is not None else series_rational_tester(f)
        self.p = f.prime
        self.keval = f.eval_precision()
        self.fp = f.derivative()
        self.hensel: list[HenselZero] = []
        self.rational: list[RationalZero] = []
        self.discarded = 0
        self.tested_pairs: set[tuple[int, int]] = set()

    # -- accounting ----------------------------------------------------

    def accounted_in(self, center: int, depth: int) -> int:
        q = self.p**depth
        tot = 0
        for h in self.hensel:
            if h.refined.residue % q == center % q:
                tot += 1
        for rz in self.rational:
            if rz.embedded.residue % q == center % q:
                tot += rz.multiplicity
        return tot

    def _covered_by_known(self, x: PadicInt, nu: int) -> bool:
        for h in self.hensel:
            if _same_zero(x, nu, h.refined, h.nu):
                return True
        for rz in self.rational:
            if _same_zero(x, nu, rz.embedded, nu):
                return True
        return False

    # -- Hensel branch ---------------------------------------------------

    def try_hensel(self, z1: int, fz: PadicInt):
        fpz = self.fp.eval(PadicInt(self.p, self.keval, z1))
        ok, t = hensel_condition(fz, fpz)
        if not ok:
            return
        nu = t + 1
        refined = hensel_refine(self.f, PadicInt(self.p, self.keval, z1), fprime=self.fp)
        if self._covered_by_known(refined, nu):
            return
        self.hensel.append(HenselZero(y=z1, nu=nu, t=t, refined=refined))

    # -- rational branch -------------------------------------------------

    def rational_pass(self, depth: int, live: list[ResidueNode]):
        if not live:
            return
        height = min(depth, self.cfg.height_cap)
        candidates: list[tuple[int, int]] = []
        for b in range(1, height + 1):
            if b % self.p == 0:
                continue
            for a in range(-height, height + 1):
                if abs(a) <= height and _coprime(a, b):
                    candidates.append((a, b))
        # fast path: reconstruct off each live centre at its own depth
        for node in live:
            x = PadicInt(self.p, node.depth, node.center)
            H = _isqrt((x.modulus - 1) // 2)
            H = max(1, min(H, self.cfg.height_cap))
            pair = rational_reconstruct(x, H)
            if pair is not None:
                candidates.append(pair)
        centers = {(n.center % self.p**n.depth, n.depth) for n in live}
        for a, b in candidates:
            if (a, b) in self.tested_pairs:
                continue
            self.tested_pairs.add((a, b))
            x = PadicInt.from_rational(a, b, self.p, self.keval)
            in_live = any(x.residue % self.p**d == c for c, d in centers)
            if not in_live:
                continue
            if self._covered_by_known(x, self.keval):
                continue
            verdict = self.tester(a, b)
            if not verdict.is_zero:
                continue
            cap = max(n.count for n in live) + 1
            mult, _cond = multiplicity_at(self.f, x, cap)
            cert = "exact" if verdict.kind == "zero_exact" else f"valuation({verdict.detail})"
            self.rational.append(RationalZero(a=a, b=b, multiplicity=mult, certification=cert, embedded=x))

    # -- main loop ---------------------------------------------------------

    def run(self) -> SearchResult:
        root = newton_count(self.f, 0, 0)
        root_count = root.ball
        if root_count == 0:
            return SearchResult([], [], [], 0, 0, "complete")
        live = [ResidueNode(0, 0, root_count, 0)]
        status = "complete"
        unresolved: list[ResidueNode] = []
        while live:
            depth = live[0].depth + 1
            if depth > self.cfg.max_depth or self.cfg.timed_out():
                status = "partial"
                unresolved.extend(live)
                break
            if depth > self.keval - 4:
                raise PrecisionExhausted(f"search depth {depth} needs more than {self.keval} digits")
            children: list[ResidueNode] = []
            for node in live:
                child_mass = 0
                step = self.p**node.depth
                for a in range(self.p):
                    z1 = node.center + a * step
                    fz = self.f.eval(PadicInt(self.p, self.keval, z1))
                    vf = fz.valuation()
                    if vf.is_finite and vf.bound < depth:
                        continue  # f(x) = f(z1) != 0 mod p^depth throughout the ball
                    cnt = newton_count(self.f, z1, depth).ball
                    child_mass += cnt
                    if cnt == 0:
                        continue
                    self.try_hensel(z1, fz)
                    stable = node.stable_rounds + 1 if cnt == node.count else 0
                    children.append(ResidueNode(z1, depth, cnt, 0, stable))
                self.discarded += node.count - child_mass
            if self.cfg.rational:
                self.rational_pass(depth, children)
            live = []
            for node in children:
                acc = self.accounted_in(node.center, node.depth)
                if acc > node.count:
                    raise AmbiguousValuation(
                        f"accounted mass {acc} exceeds ball count {node.count}; raise precision"
                    )
                if acc == node.count:
                    continue
                node = replace(node, accounted=acc)
                if (
                    node.outstanding >= 2
                    and node.depth >= self.cfg.stall_depth
                    and node.stable_rounds >= self.cfg.stall_rounds
                ):
                    unresolved.append(node)
                    status = "partial"
                    continue
                live.append(node)
        return SearchResult(
            hensel=sorted(self.hensel, key=lambda h: h.refined.residue),
            rational=sorted(self.rational, key=lambda r: (r.b, r.a)),
            unresolved=unresolved,
            discarded=self.discarded,
            root_count=root_count,
            status=status,
        )


def zero_search(f: PadicSeries, cfg: SearchConfig | None = None, tester=None) -> SearchResult:
    """Full search: Hensel certificates plus the interleaved rational branch."""
    cfg = cfg or SearchConfig()
    return _Search(f, cfg, tester).run()


def hensel_only_search(f: PadicSeries, cfg: SearchConfig | None = None) -> SearchResult:
    """The shortened variant that assumes simple zeros; multiple zeros end up
    unresolved instead of terminating the search."""
    cfg = cfg or SearchConfig()
    cfg = replace(cfg, rational=False)
    return _Search(f, cfg, tester=None).run()


def _coprime(a: int, b: int) -> bool:
    from math import gcd

    return gcd(a, b) == 1


def _isqrt(n: int) -> int:
    from math import isqrt

    return isqrt(max(0, n))
