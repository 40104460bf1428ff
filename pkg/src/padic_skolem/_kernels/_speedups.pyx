# cython: language_level=3
"""Compiled versions of the modular series kernels.

The coefficients are arbitrary-size Python ints (the moduli are prime powers
far beyond machine words), so the arithmetic itself still goes through CPython
longs; the win over the pure variant is moving the inner loops and list
indexing to C.  Semantics must match ``_pure`` exactly.
"""


def horner_eval(coeffs, x, mod):
    cdef Py_ssize_t j
    cdef Py_ssize_t n = len(coeffs)
    acc = 0
    for j in range(n - 1, -1, -1):
        acc = (acc * x + coeffs[j]) % mod
    return acc


def taylor_shift(coeffs, z, mod):
    cdef Py_ssize_t k, j
    cdef Py_ssize_t n = len(coeffs)
    cdef list c = [v % mod for v in coeffs]
    if z % mod == 0:
        return c
    for k in range(n):
        for j in range(n - 2, k - 1, -1):
            c[j] = (c[j] + z * c[j + 1]) % mod
    return c


def convolve_trunc(a, b, mod, trunc):
    cdef Py_ssize_t i, j, n, jmax
    cdef Py_ssize_t la = len(a)
    cdef Py_ssize_t lb = len(b)
    if la == 0 or lb == 0:
        return []
    n = la + lb - 1
    if trunc < n:
        n = trunc
    cdef list out = [0] * n
    for i in range(la):
        ai = a[i]
        if ai == 0 or i >= n:
            continue
        jmax = lb
        if n - i < jmax:
            jmax = n - i
        for j in range(jmax):
            bj = b[j]
            if bj:
                out[i + j] = (out[i + j] + ai * bj) % mod
    return out


def scaled_add(acc, coeffs, scalar, mod):
    cdef Py_ssize_t j
    cdef Py_ssize_t n = len(coeffs)
    for j in range(n):
        c = coeffs[j]
        if c:
            acc[j] = (acc[j] + scalar * c) % mod
    return acc
