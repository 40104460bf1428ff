import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from padic_skolem.errors import HenselConditionFails, IdenticallyZeroToPrecision
from padic_skolem.padic import PadicInt, Valuation
from padic_skolem.series import PadicSeries, hensel_refine, newton_count


def naive_eval(f: PadicSeries, x: PadicInt) -> int:
    """Independent summation oracle for series evaluation."""
    m = min(f.eval_precision(), x.precision)
    mod = f.prime**m
    return sum(c * pow(x.residue, j, mod) for j, c in enumerate(f.coeffs)) % mod


def random_series(rng, p=3, K=12, deg=6):
    coeffs = [rng.randrange(p**K) for _ in range(deg + 1)]
    return PadicSeries(p, K, coeffs, K, 1)


class TestEval:
    def test_constant(self):
        f = PadicSeries.polynomial(5, 6, [2])
        assert f.eval(PadicInt(5, 6, 1234)).residue == 2

    def test_matches_naive_oracle(self):
        rng = random.Random(31)
        for _ in range(100):
            p = rng.choice([3, 5, 7])
            f = random_series(rng, p=p)
            x = PadicInt(p, 12, rng.randrange(p**12))
            assert f.eval(x).residue == naive_eval(f, x)


class TestDerivative:
    def test_constant_to_zero(self):
        f = PadicSeries.polynomial(3, 8, [7])
        assert f.derivative().is_zero_to_precision()

    def test_x_to_one(self):
        f = PadicSeries.polynomial(3, 8, [0, 1])
        assert f.derivative().coeffs == [1]

    def test_product_rule_convolution_oracle(self):
        rng = random.Random(32)
        for _ in range(30):
            p = 5
            K = 10
            mod = p**K
            a = [rng.randrange(mod) for _ in range(4)]
            b = [rng.randrange(mod) for _ in range(4)]
            fa = PadicSeries.polynomial(p, K, a)
            fb = PadicSeries.polynomial(p, K, b)
            prod = fa.mul(fb)
            lhs = prod.derivative()
            rhs = fa.derivative().mul(fb).add(fa.mul(fb.derivative()))
            n = max(len(lhs.coeffs), len(rhs.coeffs))
            la = lhs.coeffs + [0] * (n - len(lhs.coeffs))
            rb = rhs.coeffs + [0] * (n - len(rhs.coeffs))
            assert la == rb


class TestShift:
    def test_shift_zero_identity(self):
        f = PadicSeries.polynomial(3, 10, [4, 5, 6])
        assert f.shift(0).coeffs == f.coeffs

    def test_shift_square(self):
        f = PadicSeries.polynomial(5, 10, [0, 0, 1])
        g = f.shift(3)
        assert g.coeffs[:3] == [9, 6, 1]

    @settings(max_examples=100, deadline=None)
    @given(st.integers(0, 3**8 - 1), st.integers(0, 3**8 - 1), st.integers(0, 5))
    def test_shift_eval_consistency(self, z, x, seed):
        rng = random.Random(seed)
        f = random_series(rng, p=3, K=8, deg=5)
        zz = PadicInt(3, 8, z)
        xx = PadicInt(3, 8, x)
        assert f.shift(zz).eval(xx).residue == f.eval(zz + xx).residue


class TestNewtonCount:
    def test_unit_series_no_zeros(self):
        # 2 * (principal unit series): minimum only at j = 0
        p, K = 3, 10
        coeffs = [2, 2 * p, 2 * p**2]
        f = PadicSeries(p, K, coeffs, 0, Fraction(1, 2))
        assert newton_count(f, 0, 0).ball == 0

    def test_x_times_x_minus_3(self):
        f = PadicSeries.polynomial(3, 9, [0, -3, 1])
        assert newton_count(f, 0, 0).ball == 2
        assert newton_count(f, 0, 1).ball == 2
        assert newton_count(f, 0, 2).ball == 1
        assert newton_count(f, 0, 1).sphere == 1  # the root 3 sits on v = 1

    def test_constructed_products_oracle(self):
        rng = random.Random(33)
        for _ in range(100):
            p = rng.choice([3, 5])
            K = 40
            roots = []
            for _i in range(rng.randint(1, 4)):
                e = rng.randint(0, 6)
                unit = rng.randrange(1, p**8)
                while unit % p == 0:
                    unit = rng.randrange(1, p**8)
                roots.append((p**e * unit) % p**K if rng.random() < 0.8 else 0)
            mod = p**K
            coeffs = [1]
            for r in roots:
                coeffs = [(-r * coeffs[0]) % mod] + [
                    (coeffs[j - 1] - r * coeffs[j]) % mod for j in range(1, len(coeffs))
                ] + [1]
                coeffs = coeffs[: len(coeffs)]
            f = PadicSeries(p, K, coeffs, K, 1)
            z = rng.choice(roots + [0, 1])
            r = rng.randint(0, 7)
            want = sum(1 for root in roots if _val(root - z, p, K) >= r)
            assert newton_count(f, z, r).ball == want

    def test_identically_zero(self):
        f = PadicSeries(3, 5, [0, 0, 0], 5, 1)
        with pytest.raises(IdenticallyZeroToPrecision):
            newton_count(f, 0, 0)

    def test_ball_monotone_and_sphere_sum(self):
        f = PadicSeries.polynomial(3, 20, [0, -9, 0, 1])  # roots 0, +-3
        balls = [newton_count(f, 0, r).ball for r in range(6)]
        assert balls == sorted(balls, reverse=True)
        spheres = sum(newton_count(f, 0, r).sphere for r in range(6))
        # all mass at finite radius below 6 except the root at 0 itself
        assert spheres + 1 == newton_count(f, 0, 0).ball


def _val(n, p, K):
    n %= p**K
    if n == 0:
        return K
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


class TestHensel:
    def test_sqrt7_in_z3(self):
        K = 12
        f = PadicSeries.polynomial(3, K, [-7, 0, 1])
        x = hensel_refine(f, PadicInt(3, K, 1))
        # brute-force oracle mod 3^6
        sols = [y for y in range(3**6) if (y * y - 7) % 3**6 == 0 and y % 3 == 1]
        assert len(sols) == 1
        assert x.residue % 3**6 == sols[0]
        assert (x.residue**2 - 7) % 3**x.precision == 0

    def test_linear_immediate(self):
        f = PadicSeries.polynomial(5, 8, [-3, 1])
        assert hensel_refine(f, PadicInt(5, 8, 3)).residue == 3

    def test_condition_fails(self):
        f = PadicSeries.polynomial(3, 10, [0, 0, 1])  # X^2: double zero
        with pytest.raises(HenselConditionFails):
            hensel_refine(f, PadicInt(3, 10, 3))

    def test_excess_doubles(self):
        rng = random.Random(34)
        for _ in range(40):
            p = rng.choice([3, 5, 7])
            K = 30
            t = rng.randint(0, 2)
            r = rng.randrange(p**6)
            s = r + p**t * (1 + p * rng.randrange(p**3))  # v(r - s) = t
            f = PadicSeries.polynomial(p, K, [(r * s) % p**K, -(r + s) % p**K, 1])
            y = PadicInt(p, K, r + p ** (2 * t + 1))
            trace: list = []
            x = hensel_refine(f, y, trace=trace)
            assert (x - PadicInt(p, K, r)).valuation().bound > t
            # excess doubles while the residual valuation is exactly known;
            # an inexact final entry means the residual vanished to precision
            for v0, v1 in zip(trace, trace[1:]):
                assert v0.is_finite
                if v1.is_finite:
                    assert v1.bound - 2 * t >= 2 * (v0.bound - 2 * t)

    def test_stable_under_higher_precision(self):
        f1 = PadicSeries.polynomial(3, 10, [-7, 0, 1])
        f2 = PadicSeries.polynomial(3, 20, [-7, 0, 1])
        x1 = hensel_refine(f1, PadicInt(3, 10, 1))
        x2 = hensel_refine(f2, PadicInt(3, 20, 1))
        assert x2.residue % 3**x1.precision == x1.residue
