"""Exact rational helpers: Bernoulli values, fractional parts, residues.

All arithmetic is done on `fractions.Fraction`; no floats appear anywhere
in a computational path.
"""

from __future__ import annotations

from fractions import Fraction


def bernoulli1(x: Fraction) -> Fraction:
    """First Bernoulli polynomial B1(x) = x - 1/2."""
    return x - Fraction(1, 2)


def bernoulli2(x: Fraction) -> Fraction:
    """Second Bernoulli polynomial B2(x) = x^2 - x + 1/6."""
    return x * x - x + Fraction(1, 6)


def frac_unit(x: Fraction) -> Fraction:
    """Fractional part of x taken in the half-open interval (0, 1].

    Integers map to 1, not 0.  This is the bracket used throughout the
    cone-decomposition recursions.
    """
    x = Fraction(x)
    f = x - (x.numerator // x.denominator)
    return Fraction(1) if f == 0 else f


def residue_zero(a: int, q: int) -> int:
    """Representative of a mod q in [0, q-1]."""
    if q < 1:
        raise ValueError("modulus must be positive")
    return a % q


def residue_one(a: int, q: int) -> int:
    """Representative of a mod q in [1, q].

    Multiples of q map to q itself, so (a - residue_one(a, q)) / q is the
    integer quotient paired with this residue convention.
    """
    if q < 1:
        raise ValueError("modulus must be positive")
    r = a % q
    return q if r == 0 else r


def kernel_F(x: Fraction, y: Fraction) -> Fraction:
    """Two-variable kernel F(x, y) = -B1(x)*B1(y) + B2(x)."""
    return -bernoulli1(x) * bernoulli1(y) + bernoulli2(x)
