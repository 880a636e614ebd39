"""Exact arithmetic in real quadratic fields Q(sqrt(Delta)).

Elements are pairs of Fractions (a, b) representing a + b*sqrt(Delta).
All comparisons and sign decisions are made with integer arithmetic only
(compare a^2 against Delta*b^2), never with floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt


class FieldMismatchError(ValueError):
    """Raised when elements of distinct fields are combined."""


class UnitSearchError(RuntimeError):
    """Raised when the unit computation exceeds its period bound."""


def is_perfect_square(n: int) -> bool:
    if n < 0:
        return False
    r = isqrt(n)
    return r * r == n


def squarefree_part(n: int, bound: int = 10**6) -> int:
    """Largest squarefree divisor d of n > 0 with n = d * m^2.

    Factors by trial division; raises if a cofactor survives that cannot
    be certified with primes up to `bound`.
    """
    if n <= 0:
        raise ValueError("n must be positive")
    d = 1
    p = 2
    while p * p <= n and p <= bound:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            if e % 2:
                d *= p
        p += 1 if p == 2 else 2
    if n > 1:
        if is_perfect_square(n):
            pass  # n = m^2 with prime factors > bound
        elif n < bound * bound * bound and not is_perfect_square(n):
            d *= n  # prime or product of two distinct primes > bound
        else:
            raise ValueError(f"cannot certify squarefree part beyond bound {bound}")
    return d


def is_squarefree(n: int, bound: int = 10**6) -> bool:
    """Trial-division squarefree test; raises beyond the certification bound."""
    if n <= 0:
        return False
    p = 2
    while p * p <= n and p <= bound:
        if n % (p * p) == 0:
            return False
        if n % p == 0:
            n //= p
        p += 1 if p == 2 else 2
    if p * p > n:
        return True
    # remaining cofactor has prime factors > bound
    if is_perfect_square(n):
        return False
    if n < bound * bound * bound:
        return True
    raise ValueError(f"cannot certify squarefreeness beyond bound {bound}")


@dataclass(frozen=True)
class QuadField:
    """The real quadratic field Q(sqrt(Delta)); Delta a positive nonsquare."""

    Delta: int

    def __post_init__(self):
        if self.Delta <= 0 or is_perfect_square(self.Delta):
            raise ValueError("Delta must be a positive nonsquare integer")

    def elem(self, a, b=0) -> "QuadElem":
        return QuadElem(Fraction(a), Fraction(b), self)

    def sqrt_gen(self) -> "QuadElem":
        return self.elem(0, 1)


@dataclass(frozen=True)
class QuadElem:
    """a + b*sqrt(Delta) with exact rational a, b."""

    a: Fraction
    b: Fraction
    field: QuadField

    def _check(self, other: "QuadElem"):
        if self.field.Delta != other.field.Delta:
            raise FieldMismatchError("elements belong to different fields")

    def _wrap(self, a: Fraction, b: Fraction) -> "QuadElem":
        return QuadElem(a, b, self.field)

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def __add__(self, other):
        if isinstance(other, QuadElem):
            self._check(other)
            return self._wrap(self.a + other.a, self.b + other.b)
        return self._wrap(self.a + Fraction(other), self.b)

    __radd__ = __add__

    def __neg__(self):
        return self._wrap(-self.a, -self.b)

    def __sub__(self, other):
        return self + (-other if isinstance(other, QuadElem) else -Fraction(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, QuadElem):
            self._check(other)
            d = self.field.Delta
            return self._wrap(
                self.a * other.a + d * self.b * other.b,
                self.a * other.b + self.b * other.a,
            )
        other = Fraction(other)
        return self._wrap(self.a * other, self.b * other)

    __rmul__ = __mul__

    def inverse(self) -> "QuadElem":
        n = self.a * self.a - self.field.Delta * self.b * self.b
        if n == 0:
            raise ZeroDivisionError("element is zero")
        return self._wrap(self.a / n, -self.b / n)

    def __truediv__(self, other):
        if isinstance(other, QuadElem):
            return self * other.inverse()
        return self * (1 / Fraction(other))

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = self.field.elem(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def sign(self) -> int:
        """Sign of the real value a + b*sqrt(Delta), decided exactly."""
        a, b, d = self.a, self.b, self.field.Delta
        if b == 0:
            return (a > 0) - (a < 0)
        if a == 0:
            return 1 if b > 0 else -1
        if a > 0 and b > 0:
            return 1
        if a < 0 and b < 0:
            return -1
        # opposite signs: compare a^2 with Delta*b^2 (equality impossible)
        if a * a > d * b * b:
            return 1 if a > 0 else -1
        return 1 if b > 0 else -1

    def __lt__(self, other):
        diff = self - other
        return diff.sign() < 0

    def __le__(self, other):
        diff = self - other
        return diff.sign() <= 0

    def __gt__(self, other):
        diff = self - other
        return diff.sign() > 0

    def __ge__(self, other):
        diff = self - other
        return diff.sign() >= 0

    def floor(self) -> int:
        """Exact floor of the real value."""
        a, b, d = self.a, self.b, self.field.Delta
        if b == 0:
            return a.numerator // a.denominator
        den = a.denominator * b.denominator // gcd(a.denominator, b.denominator)
        A = a.numerator * (den // a.denominator)
        B = b.numerator * (den // b.denominator)
        # B*sqrt(d) is irrational, so its floor is +-isqrt with adjustment
        t = isqrt(B * B * d)
        if B < 0:
            t = -t - 1
        return (A + t) // den

    def ceil(self) -> int:
        return -((-self).floor())

    def __repr__(self):
        return f"({self.a}+{self.b}*sqrt({self.field.Delta}))"


def conj(x: QuadElem) -> QuadElem:
    """Galois conjugate: a + b*sqrt(D) -> a - b*sqrt(D)."""
    return QuadElem(x.a, -x.b, x.field)


def norm(x: QuadElem) -> Fraction:
    """Field norm x * conj(x) = a^2 - Delta*b^2."""
    return x.a * x.a - x.field.Delta * x.b * x.b


def trace(x: QuadElem) -> Fraction:
    return 2 * x.a


def is_totally_positive(x: QuadElem) -> bool:
    """True iff both real embeddings of x are positive."""
    if x.a == 0 and x.b == 0:
        raise ValueError("total positivity is undefined for zero")
    return x.sign() > 0 and conj(x).sign() > 0


@dataclass(frozen=True)
class ModuleBasis:
    """The Z-module [1, delta]; delta must be reduced: delta > 1, 0 < delta' < 1."""

    delta: QuadElem

    def __post_init__(self):
        d = self.delta
        if not (d > d.field.elem(1)):
            raise ValueError("delta must exceed 1")
        dc = conj(d)
        zero, one = d.field.elem(0), d.field.elem(1)
        if not (zero < dc < one):
            raise ValueError("conjugate of delta must lie in (0,1)")

    @property
    def field(self) -> QuadField:
        return self.delta.field


def coords_in_basis(x: QuadElem, basis: ModuleBasis) -> tuple[Fraction, Fraction]:
    """(u, v) with x = u*1 + v*delta, exact."""
    d = basis.delta
    v = x.b / d.b
    u = x.a - v * d.a
    return u, v


def eval_coords(u, v, basis: ModuleBasis) -> QuadElem:
    return basis.field.elem(Fraction(u)) + Fraction(v) * basis.delta


def fundamental_unit_totally_positive(
    basis: ModuleBasis, max_period: int = 10**6
) -> QuadElem:
    """Totally positive fundamental unit eps > 1 of the ring acting on [1, delta].

    Obtained from one period of the minus continued fraction of delta via the
    boundary-point recurrence P_{i+1} = b_i P_i - P_{i-1}: after m steps
    P_m = eps^{-1}.
    """
    from .contfrac import minus_cf  # local import to avoid module cycle

    mcf = minus_cf(basis.delta, max_period=max_period)
    one = basis.field.elem(1)
    p_prev, p_cur = basis.delta, one
    for b in mcf.terms:
        p_prev, p_cur = p_cur, b * p_cur - p_prev
    eps = p_cur.inverse()
    if norm(eps) != 1 or not is_totally_positive(eps) or not (eps > one):
        raise UnitSearchError("unit recurrence returned a non-unit; field data malformed")
    return eps


def mult_matrix(x: QuadElem, basis: ModuleBasis):
    """2x2 matrix of multiplication by x on the basis [1, delta] (column action)."""
    c1 = coords_in_basis(x, basis)
    c2 = coords_in_basis(x * basis.delta, basis)
    return ((c1[0], c2[0]), (c1[1], c2[1]))


def unit_index_lambda(
    eps: QuadElem, q: int, basis: ModuleBasis, max_power: int = 10**6
) -> int:
    """Least lambda >= 1 with eps^lambda = 1 modulo q*[1, delta].

    Equals [E+ : E_q+] and the orbit size of every label in F_delta.
    """
    if q < 1:
        raise ValueError("q must be positive")
    m = mult_matrix(eps, basis)
    for row in m:
        for entry in row:
            if Fraction(entry).denominator != 1:
                raise ValueError("eps does not stabilize the module [1, delta]")
    (m00, m01), (m10, m11) = ((int(e) % q for e in row) for row in m)
    u, v = 1, 0  # coordinates of eps^j, starting at j=0
    for j in range(1, max_power + 1):
        u, v = (m00 * u + m01 * v) % q, (m10 * u + m11 * v) % q
        if u == 1 % q and v == 0:
            return j
    raise UnitSearchError(f"no lambda found within {max_power} powers")
