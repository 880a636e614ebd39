"""Periodic continued fractions of quadratic irrationals, exact throughout.

Plus expansions [[a_0,...,a_{s-1}]] follow x -> 1/(x - floor(x)); minus
(ceiling) expansions ((b_0,...,b_{m-1})) follow x -> 1/(ceil(x) - x).
Period detection is by exact repetition of the algebraic state, never by
floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .quadfield import QuadElem, QuadField, conj, squarefree_part


class NotReducedError(ValueError):
    """Input surd fails the reduction hypothesis for the requested expansion."""


class ConversionMismatchError(RuntimeError):
    """plus_to_minus formula disagrees with the direct ceiling algorithm."""


@dataclass(frozen=True)
class PeriodicCF:
    """One period of a purely periodic plus continued fraction."""

    terms: tuple[int, ...]

    def __post_init__(self):
        if not self.terms or any(a < 1 for a in self.terms):
            raise ValueError("plus CF terms must be positive integers")

    @property
    def s(self) -> int:
        return len(self.terms)


@dataclass(frozen=True)
class MinusCF:
    """One period of a periodic minus (ceiling) continued fraction."""

    terms: tuple[int, ...]

    def __post_init__(self):
        if not self.terms or any(b < 2 for b in self.terms):
            raise ValueError("minus CF terms must be >= 2")

    @property
    def m(self) -> int:
        return len(self.terms)


def _is_plus_reduced(x: QuadElem) -> bool:
    one = x.field.elem(1)
    return x > one and -one / conj(x) > one


def plus_cf(x: QuadElem, max_period: int = 10**6) -> PeriodicCF:
    """Purely periodic plus CF of a reduced quadratic irrational.

    Rejects rational input and surds whose expansion has a preperiod.
    """
    if x.is_rational:
        raise NotReducedError("rational numbers have no purely periodic expansion")
    if not _is_plus_reduced(x):
        raise NotReducedError("x must satisfy x > 1 and -1/x' > 1")
    start = (x.a, x.b)
    terms = []
    cur = x
    for _ in range(max_period):
        a = cur.floor()
        terms.append(a)
        cur = (cur - a).inverse()
        if (cur.a, cur.b) == start:
            return PeriodicCF(tuple(terms))
    raise RuntimeError(f"period not found within {max_period} terms")


def minus_cf(x: QuadElem, max_period: int = 10**6) -> MinusCF:
    """Periodic minus CF of x computed by the ceiling algorithm.

    Requires x > 1 and 0 < x' < 1 (reduced for the minus expansion).
    """
    if x.is_rational:
        raise NotReducedError("rational numbers have no periodic minus expansion")
    zero, one = x.field.elem(0), x.field.elem(1)
    if not (x > one and zero < conj(x) < one):
        raise NotReducedError("x must satisfy x > 1 and 0 < x' < 1")
    start = (x.a, x.b)
    terms = []
    cur = x
    for _ in range(max_period):
        b = cur.ceil()
        terms.append(b)
        cur = (b - cur).inverse()
        if (cur.a, cur.b) == start:
            return MinusCF(tuple(terms))
    raise RuntimeError(f"period not found within {max_period} terms")


def cf_value(cf: PeriodicCF) -> QuadElem:
    """The value of the purely periodic plus CF, as the root > 1 of its
    one-period fixed-point equation, in the field with squarefree radicand."""
    p_prev, p_cur = 1, cf.terms[0]  # p_{-1}, p_0
    q_prev, q_cur = 0, 1
    for a in cf.terms[1:]:
        p_prev, p_cur = p_cur, a * p_cur + p_prev
        q_prev, q_cur = q_cur, a * q_cur + q_prev
    # x = (p_cur x + p_prev) / (q_cur x + q_prev)
    A, B, C = q_cur, q_prev - p_cur, -p_prev
    disc = B * B - 4 * A * C
    d0 = squarefree_part(disc)
    c2 = disc // d0
    from math import isqrt

    c = isqrt(c2)
    field = QuadField(d0)
    root = field.elem(Fraction(-B, 2 * A), Fraction(c, 2 * A))
    if not (root > field.elem(1)):
        raise RuntimeError("fixed-point root selection failed")
    return root


def pair_count(s: int) -> int:
    """Number of (a_{2j-1}, a_{2j}) pairs consumed by one minus-CF period:
    s/2 for even s, s for odd s (the plus period is traversed twice)."""
    return s // 2 if s % 2 == 0 else s


def s_indices(cf: PeriodicCF) -> list[int]:
    """S_0=0, S_j = S_{j-1} + a_{2j-1} for j = 1..pair_count, indices mod s."""
    s = cf.s
    out = [0]
    for j in range(1, pair_count(s) + 1):
        out.append(out[-1] + cf.terms[(2 * j - 1) % s])
    return out


def plus_to_minus(cf: PeriodicCF, validate: bool = True) -> MinusCF:
    """Minus CF of 1 + value(cf) via the index rule: b_i = a_{2j} + 2 at
    i = S_j, b_i = 2 otherwise, with period m = S_{s/2} (even s) or S_s (odd s).

    Cross-validated against the direct ceiling algorithm; the direct
    algorithm is authoritative and a mismatch raises.
    """
    s = cf.s
    S = s_indices(cf)
    m = S[-1]
    terms = [2] * m
    for j in range(pair_count(s)):
        terms[S[j]] = cf.terms[(2 * j) % s] + 2
    result = MinusCF(tuple(terms))
    if validate:
        delta = cf_value(cf) + 1
        direct = minus_cf(delta)
        if direct != result:
            raise ConversionMismatchError(
                f"conversion rule gave {result.terms}, ceiling algorithm gave "
                f"{direct.terms}; hypothesis on the a_i is violated"
            )
    return result
