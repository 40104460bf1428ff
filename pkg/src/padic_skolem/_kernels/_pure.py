"""Reference implementations of the modular series kernels.

All functions operate on lists of Python ints reduced modulo ``mod`` (a prime
power).  The compiled backend in ``_speedups.pyx`` mirrors this module exactly;
``test_kernels.py`` checks the two stay interchangeable.
"""


def horner_eval(coeffs, x, mod):
    """Evaluate sum(coeffs[j] * x**j) modulo mod."""
    acc = 0
    for c in reversed(coeffs):
        acc = (acc * x + c) % mod
    return acc


def taylor_shift(coeffs, z, mod):
    """Coefficients of f(z + X) modulo mod, by repeated synthetic division."""
    c = [v % mod for v in coeffs]
    n = len(c)
    if z % mod == 0:
        return c
    for k in range(n):
        for j in range(n - 2, k - 1, -1):
            c[j] = (c[j] + z * c[j + 1]) % mod
    return c


def convolve_trunc(a, b, mod, trunc):
    """First ``trunc`` coefficients of the product of a and b, modulo mod."""
    n = min(trunc, len(a) + len(b) - 1) if a and b else 0
    out = [0] * n
    for i, ai in enumerate(a):
        if ai == 0 or i >= n:
            continue
        jmax = min(len(b), n - i)
        for j in range(jmax):
            if b[j]:
                out[i + j] = (out[i + j] + ai * b[j]) % mod
    return out


def scaled_add(acc, coeffs, scalar, mod):
    """In-place acc[j] += scalar * coeffs[j] modulo mod; returns acc."""
    for j, c in enumerate(coeffs):
        if c:
            acc[j] = (acc[j] + scalar * c) % mod
    return acc
