"""Parity between the compiled and pure kernel backends."""

import random

import pytest

from padic_skolem._kernels import BACKEND, _pure

try:
    from padic_skolem._kernels import _speedups
except ImportError:
    _speedups = None

needs_compiled = pytest.mark.skipif(_speedups is None, reason="compiled kernels not built")


def random_case(rng, n=12):
    p = rng.choice([3, 5, 199])
    K = rng.randint(2, 30)
    mod = p**K
    coeffs = [rng.randrange(mod) for _ in range(rng.randint(1, n))]
    return coeffs, rng.randrange(mod), mod


@needs_compiled
def test_horner_parity():
    rng = random.Random(7)
    for _ in range(200):
        coeffs, x, mod = random_case(rng)
        assert _pure.horner_eval(coeffs, x, mod) == _speedups.horner_eval(coeffs, x, mod)


@needs_compiled
def test_taylor_shift_parity():
    rng = random.Random(8)
    for _ in range(200):
        coeffs, z, mod = random_case(rng)
        assert _pure.taylor_shift(coeffs, z, mod) == _speedups.taylor_shift(coeffs, z, mod)


@needs_compiled
def test_convolve_parity():
    rng = random.Random(9)
    for _ in range(200):
        a, _x, mod = random_case(rng)
        b, _y, _m = random_case(rng)
        b = [v % mod for v in b]
        trunc = rng.randint(1, len(a) + len(b))
        assert _pure.convolve_trunc(a, b, mod, trunc) == _speedups.convolve_trunc(a, b, mod, trunc)


@needs_compiled
def test_scaled_add_parity():
    rng = random.Random(10)
    for _ in range(100):
        a, s, mod = random_case(rng)
        b = [rng.randrange(mod) for _ in range(len(a))]
        assert _pure.scaled_add(list(a), b, s, mod) == _speedups.scaled_add(list(a), b, s, mod)


def test_taylor_shift_agrees_with_evaluation():
    rng = random.Random(11)
    for _ in range(50):
        coeffs, z, mod = random_case(rng)
        shifted = _pure.taylor_shift(coeffs, z, mod)
        for x in (0, 1, rng.randrange(mod)):
            direct = _pure.horner_eval(coeffs, (z + x) % mod, mod)
            via_shift = _pure.horner_eval(shifted, x, mod)
            assert direct == via_shift


def test_backend_selected():
    assert BACKEND in ("pure", "compiled")
