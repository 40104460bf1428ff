"""Exact LLL reduction and bounded integer-relation enumeration.

Used only to screen for multiplicative relations among the lifted roots, so
the dimensions are tiny (the number of distinct characteristic roots) while
the entries are huge (p^K scale); everything runs on exact Fractions.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt


def lll_reduce(basis: list[list[int]], delta: Fraction = Fraction(3, 4)) -> list[list[int]]:
    """Standard LLL on the rows of ``basis`` (exact arithmetic)."""
    b = [[Fraction(x) for x in row] for row in basis]
    n = len(b)

    def dot(u, v):
        return sum(x * y for x, y in zip(u, v))

    def gram_schmidt():
        star = []
        mu = [[Fraction(0)] * n for _ in range(n)]
        for i in range(n):
            star.append(b[i][:])
            for j in range(i):
                denom = dot(star[j], star[j])
                mu[i][j] = dot(b[i], star[j]) / denom if denom else Fraction(0)
                star[i] = [x - mu[i][j] * y for x, y in zip(star[i], star[j])]
        return star, mu

    star, mu = gram_schmidt()
    k = 1
    while k < n:
        for j in range(k - 1, -1, -1):
            if abs(mu[k][j]) > Fraction(1, 2):
                q = round(mu[k][j])
                b[k] = [x - q * y for x, y in zip(b[k], b[j])]
                star, mu = gram_schmidt()
        lhs = dot(star[k], star[k])
        rhs = (delta - mu[k][k - 1] ** 2) * dot(star[k - 1], star[k - 1])
        if lhs >= rhs:
            k += 1
        else:
            b[k], b[k - 1] = b[k - 1], b[k]
            star, mu = gram_schmidt()
            k = max(k - 1, 1)
    return [[int(x) for x in row] for row in b]


def bounded_kernel_vectors(logs: list[int], modulus: int, bound: int) -> list[tuple[int, ...]]:
    """All nonzero k with |k_i| <= bound and sum k_i logs[i] = 0 mod modulus.

    An LLL pass on the relation lattice first rules out the common no-relation
    case: any admissible k has Euclidean norm <= bound*sqrt(s), and LLL's
    first vector is within 2^((s-1)/2) of the lattice minimum, so a large
    reduced basis certifies the empty box.  Otherwise the box is enumerated
    directly.
    """
    s = len(logs)
    if s == 0:
        return []
    weight = modulus  # makes any unreduced last coordinate dominate
    rows = [[0] * i + [1] + [0] * (s - 1 - i) + [weight * logs[i]] for i in range(s)]
    rows.append([0] * s + [weight * modulus])
    reduced = lll_reduce(rows)
    shortest_sq = min(sum(x * x for x in row) for row in reduced if any(row))
    # ||b1|| <= 2^((s)/2) * lambda_1 for the (s+1)-dim lattice
    lam1_sq_lower = Fraction(shortest_sq, 2 ** (s + 1))
    box_sq = bound * bound * s
    if lam1_sq_lower > box_sq:
        return []
    out = []
    vec = [0] * s

    def rec(i: int):
        if i == s:
            if any(vec) and sum(k * l for k, l in zip(vec, logs)) % modulus == 0:
                out.append(tuple(vec))
            return
        for v in range(-bound, bound + 1):
            vec[i] = v
            rec(i + 1)

    if (2 * bound + 1) ** s > 2_000_000:
        raise ValueError(f"relation box (2*{bound}+1)^{s} too large to enumerate")
    rec(0)
    return out
