import random
from fractions import Fraction

from padic_skolem.ratpoly import (
    RatPoly,
    cyclotomic,
    poly_gcd,
    power_poly,
    rational_roots,
    ratio_resultant,
    resultant,
    root_of_unity_ratio_order,
    squarefree_multiplicities,
    squarefree_part,
    sylvester_resultant,
)


def test_resultant_linear():
    # product-over-roots convention: Res(X-2, X-3) = (2-3) = -1
    assert resultant(RatPoly([-2, 1]), RatPoly([-3, 1])) == -1


def test_resultant_shared_root():
    f = RatPoly([-2, 0, 1])
    assert resultant(f, f) == 0


def test_resultant_sylvester_oracle():
    f = RatPoly([-2, 0, 1])
    g = RatPoly([-3, 0, 1])
    assert sylvester_resultant(f, g) == 1
    assert resultant(f, g) == 1


def test_resultant_random_vs_sylvester():
    rng = random.Random(12)
    for _ in range(40):
        f = RatPoly([rng.randint(-5, 5) for _ in range(rng.randint(2, 5))] + [rng.randint(1, 4)])
        g = RatPoly([rng.randint(-5, 5) for _ in range(rng.randint(2, 5))] + [rng.randint(1, 4)])
        assert resultant(f, g) == sylvester_resultant(f, g)


def test_divmod_and_gcd():
    f = RatPoly([-1, 0, 1])  # (X-1)(X+1)
    g = RatPoly([-1, 1])
    q, r = divmod(f, g)
    assert r.is_zero and q == RatPoly([1, 1])
    assert poly_gcd(f, RatPoly([1, 1])) == RatPoly([1, 1])


def test_squarefree():
    f = RatPoly([-2, 1]) * RatPoly([-2, 1]) * RatPoly([-3, 1])
    rad = squarefree_part(f)
    assert rad == (RatPoly([-2, 1]) * RatPoly([-3, 1])).monic()
    parts = squarefree_multiplicities(f)
    assert (RatPoly([-2, 1]).monic(), 2) in parts
    assert (RatPoly([-3, 1]).monic(), 1) in parts


def test_cyclotomic_small():
    assert cyclotomic(1) == RatPoly([-1, 1])
    assert cyclotomic(2) == RatPoly([1, 1])
    assert cyclotomic(4) == RatPoly([1, 0, 1])
    assert cyclotomic(6) == RatPoly([1, -1, 1])


def test_ratio_resultant_roots():
    # g = (X-2)(X-6): ratios 3 and 1/3 are roots of h(y)
    g = RatPoly.from_roots([2, 6])
    h = ratio_resultant(g)
    assert h(Fraction(3)) == 0
    assert h(Fraction(1, 3)) == 0
    assert h(Fraction(5)) != 0


def test_ratio_order_fibonacci():
    assert root_of_unity_ratio_order(RatPoly([-1, -1, 1])) == 1


def test_ratio_order_pm():
    # roots i, -i: ratio -1 has order 2
    assert root_of_unity_ratio_order(RatPoly([1, 0, 1])) == 2
    # roots 1, -1
    assert root_of_unity_ratio_order(RatPoly([-1, 0, 1])) == 2


def test_ratio_order_sixth():
    # roots 2w, 2w^2 for w a primitive cube root: X^2 + 2X + 4: ratio w has order 3
    assert root_of_unity_ratio_order(RatPoly([4, 2, 1])) == 3


def test_power_poly():
    g = RatPoly.from_roots([2, 3])
    h = power_poly(g, 2)
    assert h == RatPoly.from_roots([4, 9])
    # repeated roots keep multiplicity
    g2 = RatPoly.from_roots([2, 2])
    assert power_poly(g2, 3) == RatPoly.from_roots([8, 8])


def test_rational_roots():
    f = RatPoly.from_roots([2, -3, Fraction(1, 2)]) * 2
    assert rational_roots(f) == [-3, Fraction(1, 2), 2]
    assert rational_roots(RatPoly([-1, -1, 1])) == []
