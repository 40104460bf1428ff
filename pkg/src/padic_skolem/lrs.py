"""Integer linear recurrences with exact rational initial values.

Coefficients are stored ascending: ``coeffs = (a_0, ..., a_{d-1})`` encodes
u_{n+d} = a_{d-1} u_{n+d-1} + ... + a_0 u_n with a_0 != 0, so the recurrence
runs exactly in both directions and the sequence extends to all integer
indices.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import IdenticallyZero
from .ratpoly import RatPoly, power_poly, root_of_unity_ratio_order


class Lrs:
    __slots__ = ("coeffs", "initial", "_fwd", "_bwd")

    def __init__(self, coeffs, initial):
        coeffs = tuple(int(c) for c in coeffs)
        initial = tuple(Fraction(v) for v in initial)
        if not coeffs:
            raise ValueError("order must be >= 1")
        if coeffs[0] == 0:
            raise ValueError("a_0 must be nonzero (the recurrence must be reversible)")
        if len(initial) != len(coeffs):
            raise ValueError(f"need {len(coeffs)} initial values, got {len(initial)}")
        self.coeffs = coeffs
        self.initial = initial
        self._fwd = list(initial)
        self._bwd: list[Fraction] = []

    @property
    def order(self) -> int:
        return len(self.coeffs)

    def char_poly(self) -> RatPoly:
        """X^d - a_{d-1} X^{d-1} - ... - a_0."""
        return RatPoly([-c for c in self.coeffs] + [1])

    def __repr__(self):
        return f"Lrs(coeffs={self.coeffs}, initial={tuple(str(v) for v in self.initial)})"

    def __eq__(self, other):
        return isinstance(other, Lrs) and self.coeffs == other.coeffs and self.initial == other.initial

    def term(self, n: int) -> Fraction:
        """Exact term at any integer index, memoised in both directions."""
        d = self.order
        if n >= 0:
            while len(self._fwd) <= n:
                m = len(self._fwd)
                nxt = sum(self.coeffs[i] * self._fwd[m - d + i] for i in range(d))
                self._fwd.append(nxt)
            return self._fwd[n]
        while len(self._bwd) < -n:
            m = -len(self._bwd) - 1  # computing u_m
            tail = [self.term(m + i) for i in range(1, d)]
            top = self.term(m + d)
            prev = (top - sum(self.coeffs[i] * tail[i - 1] for i in range(1, d))) / self.coeffs[0]
            self._bwd.append(prev)
        return self._bwd[-n - 1]

    def terms(self, start: int, count: int) -> list[Fraction]:
        return [self.term(start + i) for i in range(count)]

    def is_identically_zero(self) -> bool:
        """True when the whole bi-infinite sequence vanishes (d consecutive
        zeros force it, since the companion matrix is invertible)."""
        return all(v == 0 for v in self.initial)

    def shift(self, offset: int) -> "Lrs":
        """Same recurrence, initial window moved to start at ``offset``."""
        return Lrs(self.coeffs, [self.term(offset + i) for i in range(self.order)])


ZERO_SENTINEL = Lrs((1,), (0,))


def minimal_recurrence(terms: list[Fraction], max_order: int) -> Lrs | None:
    """Minimal-order recurrence fitted to the terms, or the zero sentinel.

    The caller guarantees the sequence truly satisfies some recurrence of
    order <= max_order with nonzero constant coefficient; at least
    2*max_order terms are then enough to pin the minimal one down (Hankel
    rank argument).  Returns None only if no integer-coefficient minimal
    recurrence with a_0 != 0 fits, which the guarantee rules out.
    """
    if len(terms) < 2 * max_order:
        raise ValueError("need at least 2*max_order terms")
    if all(v == 0 for v in terms):
        return ZERO_SENTINEL
    for r in range(1, max_order + 1):
        # solve [u_{i} ... u_{i+r-1}] * a = u_{i+r} for all windows
        sol = _solve_hankel(terms, r)
        if sol is None:
            continue
        if sol[0] == 0:
            continue
        if any(c.denominator != 1 for c in sol):
            continue
        return Lrs([int(c) for c in sol], terms[:r])
    return None


def _solve_hankel(terms: list[Fraction], r: int) -> list[Fraction] | None:
    rows = [terms[i : i + r] + [terms[i + r]] for i in range(len(terms) - r)]
    # Gaussian elimination on the (possibly overdetermined) system
    m = [row[:] for row in rows]
    ncols = r
    pivots = []
    row = 0
    for col in range(ncols):
        piv = next((i for i in range(row, len(m)) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[row], m[piv] = m[piv], m[row]
        inv = 1 / m[row][col]
        m[row] = [v * inv for v in m[row]]
        for i in range(len(m)):
            if i != row and m[i][col] != 0:
                f = m[i][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[row])]
        pivots.append(col)
        row += 1
    # consistency: all remaining rows must be zero
    for i in range(row, len(m)):
        if any(v != 0 for v in m[i]):
            return None
    if len(pivots) < ncols:
        # underdetermined: free columns admit many fits; order r is not
        # certified minimal, let the caller try the next order
        return None
    sol = [Fraction(0)] * ncols
    for i, col in enumerate(pivots):
        sol[col] = m[i][ncols]
    return sol


def minimize(u: Lrs, extra_terms: int = 10) -> Lrs:
    """Replace u by its minimal-order recurrence (exact Hankel fit)."""
    if u.is_identically_zero():
        return ZERO_SENTINEL
    window = u.terms(0, 2 * u.order + extra_terms)
    out = minimal_recurrence(window, u.order)
    if out is None:
        return u
    return out


def lrs_add(u: Lrs, v: Lrs) -> Lrs:
    """Termwise sum, minimised; order at most order(u) + order(v)."""
    bound = u.order + v.order
    terms = [u.term(n) + v.term(n) for n in range(2 * bound + 10)]
    out = minimal_recurrence(terms, bound)
    if out is None:
        raise ArithmeticError("sum admits no recurrence within the order bound")
    return out


def lrs_mul(u: Lrs, v: Lrs) -> Lrs:
    """Termwise product, minimised; order at most order(u) * order(v)."""
    bound = u.order * v.order
    terms = [u.term(n) * v.term(n) for n in range(2 * bound + 10)]
    out = minimal_recurrence(terms, bound)
    if out is None:
        raise ArithmeticError("product admits no recurrence within the order bound")
    return out


def lrs_scale(u: Lrs, c) -> Lrs:
    """c * u; collapses to the zero sentinel when c = 0."""
    c = Fraction(c)
    if c == 0 or u.is_identically_zero():
        return ZERO_SENTINEL
    return Lrs(u.coeffs, [c * v for v in u.initial])


def lrs_ring(op: str, u: Lrs, v) -> Lrs:
    if op == "add":
        return lrs_add(u, v)
    if op == "mul":
        return lrs_mul(u, v)
    if op == "scale":
        return lrs_scale(u, v)
    raise ValueError(f"unknown ring operation {op!r}")


def degeneracy_decompose(u: Lrs) -> tuple[int, list[tuple[int, Lrs]]]:
    """Split u into non-degenerate (or identically zero) subsequences.

    Returns (M, [(j, u_j)]) where u_j runs over n -> u_{M n + j}.  M is the
    lcm of the orders of all root-of-unity ratios of distinct characteristic
    roots, so every subsequence's roots are M-th powers with no torsion
    ratios left.  Identically-zero subsequences are returned as the sentinel
    and should be reported as whole progressions, not searched.
    """
    if u.is_identically_zero():
        raise IdenticallyZero("input sequence is identically zero")
    g = u.char_poly()
    M = root_of_unity_ratio_order(g)
    if M == 1:
        return 1, [(0, u)]
    gM = power_poly(g, M)
    coeffs = [-c for c in gM.coeffs[:-1]]
    if any(c.denominator != 1 for c in coeffs):
        raise ArithmeticError("power polynomial of a monic integer polynomial must be integral")
    subs = []
    d = u.order
    for j in range(M):
        init = [u.term(M * n + j) for n in range(d)]
        if all(v == 0 for v in init):
            # d leading zeros of an order-<=d subsequence force all zeros
            subs.append((j, ZERO_SENTINEL))
        else:
            subs.append((j, Lrs([int(c) for c in coeffs], init)))
    return M, subs
