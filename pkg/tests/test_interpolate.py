import random
from fractions import Fraction
from math import gcd

import pytest

from padic_skolem.errors import SearchExhausted
from padic_skolem.interpolate import (
    build_context,
    compute_period,
    multiplicative_order,
    prime_usable,
    select_prime,
)
from padic_skolem.lrs import Lrs
from padic_skolem.padic import PadicInt, int_valuation
from padic_skolem.ratpoly import RatPoly

TRIB = Lrs((1, 1, 1), (0, 1, 1))
FIB = Lrs((1, 1), (0, 1))
POW4 = Lrs((-4, 5), (3, 6))  # 4^n + 2


def first_split_prime_oracle(coeffs_int, a0, min_p=3, limit=300):
    """Brute-force oracle: first odd prime where the monic integer polynomial
    has deg-many distinct unit roots."""

    def is_prime(n):
        return n > 1 and all(n % d for d in range(2, int(n**0.5) + 1))

    d = len(coeffs_int) - 1
    for p in range(min_p, limit):
        if not is_prime(p) or p == 2 or a0 % p == 0:
            continue
        roots = [x for x in range(1, p) if sum(c * pow(x, j, p) for j, c in enumerate(coeffs_int)) % p == 0]
        if len(set(roots)) == d:
            return p
    return None


class TestSelectPrime:
    def test_tribonacci_47(self):
        assert select_prime(TRIB.char_poly(), TRIB, 3) == 47
        assert first_split_prime_oracle([-1, -1, -1, 1], 1) == 47

    def test_fibonacci_11(self):
        assert select_prime(FIB.char_poly(), FIB, 3) == 11
        assert first_split_prime_oracle([-1, -1, 1], 1) == 11

    def test_two_three(self):
        u = Lrs((-6, 5), (2, 3))  # roots 2, 3; a_0 = -6
        assert select_prime(u.char_poly(), u, 3) == 5
        assert first_split_prime_oracle([6, -5, 1], 6) == 5

    def test_integer_roots_colliding_mod_p(self):
        # roots 4 and 1 collide mod 3 but both live in Z_3 exactly
        assert select_prime(POW4.char_poly(), POW4, 3) == 3

    def test_min_prime_respected(self):
        p = select_prime(TRIB.char_poly(), TRIB, 48)
        assert p == first_split_prime_oracle([-1, -1, -1, 1], 1, min_p=48) == 53

    def test_ceiling(self):
        with pytest.raises(SearchExhausted):
            select_prime(FIB.char_poly(), FIB, 3, ceiling=7)

    def test_denominator_constraint(self):
        u = Lrs((-6, 5), (Fraction(1, 5), 3))
        # p = 5 divides an initial-value denominator, so it is skipped
        assert prime_usable(u.char_poly(), u, 5) is None


class TestPeriod:
    def test_tribonacci_periods(self):
        for p, want in ((47, 46), (103, 51), (199, 198)):
            ctx = build_context(TRIB, p, 16)
            assert ctx.period == want

    def test_power4_period_one(self):
        ctx = build_context(POW4, 3, 16)
        assert ctx.period == 1

    def test_orders_by_scan(self):
        rng = random.Random(41)
        for _ in range(100):
            p = rng.choice([5, 7, 11, 13])
            x = rng.randrange(1, p)
            n = multiplicative_order(x, p)
            assert pow(x, n, p) == 1
            # brute-force scan oracle
            scan = next(k for k in range(1, p) if pow(x, k, p) == 1)
            assert n == scan

    def test_period_divides_p_minus_1(self):
        rng = random.Random(42)
        for _ in range(20):
            coeffs = [rng.randint(-6, 6) for _ in range(2)]
            while coeffs[0] == 0:
                coeffs[0] = rng.randint(-6, 6)
            u = Lrs(coeffs, [rng.randint(-6, 6) or 1 for _ in range(2)])
            try:
                p = select_prime(u.char_poly(), u, 3, ceiling=500)
            except SearchExhausted:
                continue
            ctx = build_context(u, p, 12)
            assert (p - 1) % ctx.period == 0


class TestBinet:
    def test_power4_coefficients(self):
        ctx = build_context(POW4, 3, 20)
        # u_n = 1*4^n + 2*1^n
        by_root = {}
        for root, qc in zip(ctx.binet.roots, ctx.binet.q_coeffs):
            assert len(qc) == 1
            by_root[root.exact] = qc[0].residue % 3**4
        assert by_root == {4: 1, 1: 2}
        assert ctx.scale == 0

    def test_n_times_2n(self):
        # u_n = n 2^n: recurrence (X-2)^2 = X^2 - 4X + 4
        u = Lrs((-4, 4), (0, 2))
        ctx = build_context(u, 5, 16)
        assert len(ctx.roots) == 1 and ctx.roots[0].multiplicity == 2
        qc = ctx.binet.q_coeffs[0]
        assert qc[0].residue == 0 and qc[1].residue == 1  # q(n) = n

    def test_tribonacci_constants(self):
        ctx = build_context(TRIB, 47, 16)
        assert all(len(qc) == 1 for qc in ctx.binet.q_coeffs)
        # reconstruction for n <= 20
        m = 47**ctx.cert_precision
        for n in range(21):
            acc = 0
            for root, qc in zip(ctx.roots, ctx.binet.q_coeffs):
                acc = (acc + qc[0].residue * pow(root.value.residue, n, m)) % m
            assert acc == ctx.scaled_term(n).residue


class TestInterpolant:
    def test_constant_term_is_u_ell(self):
        for u, p in ((TRIB, 47), (FIB, 11), (POW4, 3)):
            ctx = build_context(u, p, 16)
            for ell in range(min(ctx.period, 5)):
                f = ctx.interpolant(ell)
                assert f.coeff(0).residue % p**4 == ctx.scaled_term(ell).reduce(4).residue

    def test_power4_half_zero(self):
        ctx = build_context(POW4, 3, 24)
        f = ctx.interpolant(0)
        v = f.eval(ctx.embed(Fraction(1, 2))).valuation()
        assert not v.is_finite  # vanishes to full working precision

    def test_tribonacci_zero_behind_tuple(self):
        ctx = build_context(TRIB, 47, 24)
        f = ctx.interpolant(29)
        assert not f.eval(ctx.embed(Fraction(-2, 3))).valuation().is_finite

    def test_identity_random_small_orders(self):
        rng = random.Random(43)
        done = 0
        while done < 12:
            d = rng.randint(2, 4)
            coeffs = [rng.randint(-8, 8) for _ in range(d)]
            while coeffs[0] == 0:
                coeffs[0] = rng.randint(-8, 8)
            init = [rng.randint(-8, 8) for _ in range(d)]
            if all(v == 0 for v in init):
                continue
            u = Lrs(coeffs, init)
            from padic_skolem.ratpoly import root_of_unity_ratio_order

            if root_of_unity_ratio_order(u.char_poly()) != 1:
                continue
            try:
                p = select_prime(u.char_poly(), u, 3, ceiling=400)
            except SearchExhausted:
                continue
            ctx = build_context(u, p, 14)
            for _ in range(6):
                ell = rng.randrange(ctx.period)
                n = rng.randint(0, 50)
                got = ctx.interpolant(ell).eval(ctx.embed(n))
                assert got.congruent(ctx.scaled_term(ctx.period * n + ell))
            done += 1

    def test_tail_bound_soundness(self):
        rng = random.Random(44)
        checked = 0
        while checked < 20:
            d = rng.randint(2, 3)
            coeffs = [rng.randint(-6, 6) for _ in range(d)]
            while coeffs[0] == 0:
                coeffs[0] = rng.randint(-6, 6)
            init = [rng.randint(-6, 6) for _ in range(d)]
            if all(v == 0 for v in init):
                continue
            u = Lrs(coeffs, init)
            from padic_skolem.ratpoly import root_of_unity_ratio_order

            if root_of_unity_ratio_order(u.char_poly()) != 1:
                continue
            try:
                p = select_prime(u.char_poly(), u, 3, ceiling=200)
            except SearchExhausted:
                continue
            small = build_context(u, p, 10)
            big = build_context(u, p, 20)
            ell = rng.randrange(small.period)
            f_small, f_big = small.interpolant(ell), big.interpolant(ell)
            # coefficients beyond the small truncation must obey the small tail bound
            for j in range(f_small.degree + 1, min(f_small.degree + 5, f_big.degree + 1)):
                c = f_big.coeffs[j]
                bound = small.tail_c + small.tail_s * j
                if c != 0:
                    assert int_valuation(c, p) >= bound
                else:
                    assert f_big.precision >= bound
            checked += 1
