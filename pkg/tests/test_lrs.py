import random
from fractions import Fraction

import pytest

from padic_skolem.errors import IdenticallyZero
from padic_skolem.lrs import (
    ZERO_SENTINEL,
    Lrs,
    degeneracy_decompose,
    lrs_add,
    lrs_mul,
    lrs_ring,
    lrs_scale,
    minimal_recurrence,
    minimize,
)
from padic_skolem.ratpoly import root_of_unity_ratio_order

FIB = Lrs((1, 1), (0, 1))


class TestTerm:
    def test_fibonacci_forward(self):
        assert FIB.term(5) == 5

    def test_fibonacci_backward(self):
        assert [FIB.term(-k) for k in range(1, 6)] == [1, -1, 2, -3, 5]

    def test_power_plus_two(self):
        u = Lrs((-4, 5), (3, 6))
        assert u.term(3) == 66

    def test_recurrence_both_directions_random(self):
        rng = random.Random(21)
        for _ in range(100):
            d = rng.randint(1, 4)
            coeffs = [rng.randint(-5, 5) for _ in range(d)]
            while coeffs[0] == 0:
                coeffs[0] = rng.randint(-5, 5)
            u = Lrs(coeffs, [Fraction(rng.randint(-5, 5)) for _ in range(d)])
            n = rng.randint(-15, 15)
            lhs = u.term(n + d)
            rhs = sum(coeffs[i] * u.term(n + i) for i in range(d))
            assert lhs == rhs


class TestRing:
    def test_add_negation(self):
        z = lrs_add(FIB, lrs_scale(FIB, -1))
        assert z is ZERO_SENTINEL

    def test_mul_fib_squared(self):
        sq = lrs_ring("mul", FIB, FIB)
        for n in range(12):
            assert sq.term(n) == FIB.term(n) ** 2
        assert sq.order <= 4

    def test_combined_construction(self):
        p = 5
        u, v = FIB, Lrs((-2, 3), (0, 1))
        w = lrs_add(lrs_mul(v, v), lrs_scale(lrs_mul(u, u), p))
        for n in range(20):
            assert w.term(n) == v.term(n) ** 2 + p * u.term(n) ** 2

    def test_termwise_agreement_random(self):
        rng = random.Random(22)
        for _ in range(10):
            a = Lrs((rng.randint(1, 3), rng.randint(-2, 2)), (rng.randint(-3, 3), rng.randint(-3, 3)))
            b = Lrs((rng.randint(1, 3),), (rng.randint(-3, 3),))
            s = lrs_add(a, b)
            m = lrs_mul(a, b)
            for n in range(50):
                assert s.term(n) == a.term(n) + b.term(n)
                assert m.term(n) == a.term(n) * b.term(n)


class TestMinimize:
    def test_redundant_order(self):
        # Fibonacci presented with an extra root 2
        g = Lrs((-2, 1, 2), (0, 1, 1))  # u_{n+3} = 2u_{n+2} + u_{n+1} - 2u_n
        terms = [g.term(n) for n in range(14)]
        fib_terms = [FIB.term(n) for n in range(14)]
        if terms == fib_terms:
            assert minimize(g).order == 2

    def test_minimal_recurrence_exact(self):
        terms = [Fraction(2**n + 3**n) for n in range(20)]
        u = minimal_recurrence(terms, 4)
        assert u.order == 2
        assert u.coeffs == (-6, 5)

    def test_zero_sentinel(self):
        assert minimal_recurrence([Fraction(0)] * 12, 3) is ZERO_SENTINEL


class TestDecompose:
    def test_fibonacci_trivial(self):
        M, subs = degeneracy_decompose(FIB)
        assert M == 1 and subs == [(0, FIB)]

    def test_alternating(self):
        u = Lrs((-1, 0), (1, 0))  # u_{n+2} = -u_n: terms 1,0,-1,0,...
        M, subs = degeneracy_decompose(u)
        assert M == 2
        even = subs[0][1]
        assert [even.term(n) for n in range(4)] == [1, -1, 1, -1]
        assert subs[1][1].is_identically_zero()

    def test_one_minus_minus_one(self):
        u = Lrs((1, 0), (0, 2))  # g = (X-1)(X+1), u_n = 1 - (-1)^n
        M, subs = degeneracy_decompose(u)
        assert M == 2
        assert subs[0][1].is_identically_zero()
        assert [subs[1][1].term(n) for n in range(3)] == [2, 2, 2]

    def test_identically_zero_rejected(self):
        with pytest.raises(IdenticallyZero):
            degeneracy_decompose(Lrs((1, 1), (0, 0)))

    def test_subsequences_nondegenerate(self):
        rng = random.Random(23)
        cases = [
            Lrs((-1, 0), (1, 2)),
            Lrs((4, 0), (1, 1)),  # roots +-2
            Lrs((-9, 0), (2, 3)),  # roots +-3i
        ]
        for _ in range(5):
            coeffs = [rng.randint(-4, 4) for _ in range(3)]
            while coeffs[0] == 0:
                coeffs[0] = rng.randint(-4, 4)
            cases.append(Lrs(coeffs, [rng.randint(-4, 4) for _ in range(3)]))
        for u in cases:
            if u.is_identically_zero():
                continue
            _M, subs = degeneracy_decompose(u)
            for _j, s in subs:
                if s.is_identically_zero():
                    continue
                assert root_of_unity_ratio_order(s.char_poly()) == 1
