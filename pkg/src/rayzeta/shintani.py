"""Cone decomposition for a single real quadratic field: ray-class labels,
the unit action and its orbits, boundary lattice points, the Yamamoto
fractional-coordinate recursion, and exact partial zeta values at s = 0.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from math import gcd

from .contfrac import MinusCF, minus_cf
from .exactmath import bernoulli1, bernoulli2, frac_unit, residue_zero
from .quadfield import (
    ModuleBasis,
    QuadElem,
    coords_in_basis,
    fundamental_unit_totally_positive,
    norm,
    unit_index_lambda,
)

MAX_TERMS_DEFAULT = 10**6


class LabelError(ValueError):
    """Label outside F_delta or malformed."""


class InternalCheckError(RuntimeError):
    """Two independent computations of the same quantity disagreed."""


@dataclass(frozen=True)
class RayLabel:
    """(C, D) with 0 <= C, D <= q-1, labelling the ray class of (C+D*delta)*b."""

    C: int
    D: int
    q: int

    def __post_init__(self):
        if self.q < 2:
            raise LabelError("q must be >= 2")
        if not (0 <= self.C < self.q and 0 <= self.D < self.q):
            raise LabelError("label coordinates must lie in [0, q-1]")
        if self.C == 0 and self.D == 0:
            raise LabelError("(0,0) is excluded")


@dataclass
class ConeContext:
    """Everything needed to evaluate partial zeta values on one field.

    b_norm is the norm of the integral ideal b with b^{-1} = [1, delta];
    only b = O_K (b_norm = 1) is exercised by the shipped families, the
    general path is experimental.
    """

    basis: ModuleBasis
    q: int
    b_norm: int = 1
    max_terms: int | None = None
    mcf: MinusCF = dc_field(init=False)
    eps: QuadElem = dc_field(init=False)
    lam: int = dc_field(init=False)

    def __post_init__(self):
        if self.max_terms is None:
            self.max_terms = int(os.environ.get("RAYZETA_MAX_TERMS", MAX_TERMS_DEFAULT))
        if self.q < 2:
            raise LabelError("q must be >= 2")
        if gcd(self.b_norm, self.q) != 1:
            raise LabelError("ideal b must be relatively prime to q")
        self.mcf = minus_cf(self.basis.delta)
        self.eps = fundamental_unit_totally_positive(self.basis)
        self.lam = unit_index_lambda(self.eps, self.q, self.basis)
        if self.lam * self.mcf.m > self.max_terms:
            raise RuntimeError(
                f"lambda*m = {self.lam * self.mcf.m} exceeds cap {self.max_terms}"
            )

    def label_norm(self, label: RayLabel) -> int:
        """Norm of the integral ideal (C + D*delta)*b, a positive integer."""
        elem = label.C + label.D * self.basis.delta
        n = norm(elem) * self.b_norm
        if n.denominator != 1:
            raise LabelError("(C+D*delta)*b is not integral; basis data malformed")
        return abs(int(n))


def f_delta(ctx: ConeContext) -> list[RayLabel]:
    """All labels (C,D) != (0,0) in [0,q-1]^2 whose ideal norm is coprime to q,
    in lexicographic order."""
    q = ctx.q
    out = []
    for C in range(q):
        for D in range(q):
            if (C, D) == (0, 0):
                continue
            label = RayLabel(C, D, q)
            if gcd(ctx.label_norm(label), q) == 1:
                out.append(label)
    return out


def eps_act(eps: QuadElem, label: RayLabel, basis: ModuleBasis) -> RayLabel:
    """Image of the label under multiplication by the unit: coordinates of
    (C + D*delta)*eps in [1, delta], reduced into [0, q-1]."""
    x = (label.C + label.D * basis.delta) * eps
    u, v = coords_in_basis(x, basis)
    if u.denominator != 1 or v.denominator != 1:
        raise LabelError("unit does not stabilize [1, delta]")
    return RayLabel(residue_zero(int(u), label.q), residue_zero(int(v), label.q), label.q)


def orbit(label: RayLabel, ctx: ConeContext) -> list[RayLabel]:
    """Orbit of the label under the unit action, starting at the seed.

    Its length always equals lambda = [E+ : E_q+].
    """
    members = [label]
    cur = eps_act(ctx.eps, label, ctx.basis)
    while cur != label:
        members.append(cur)
        if len(members) > ctx.lam:
            raise InternalCheckError("orbit did not close within lambda steps")
        cur = eps_act(ctx.eps, cur, ctx.basis)
    if len(members) != ctx.lam:
        raise InternalCheckError(
            f"orbit length {len(members)} differs from lambda {ctx.lam}"
        )
    return members


def boundary_points(basis: ModuleBasis, mcf: MinusCF, count: int) -> list[QuadElem]:
    """P_{-1}, P_0, ..., P_count via P_{i+1} = b_i P_i - P_{i-1}, b periodic.

    Index shift: returned[i] is P_{i-1}.
    """
    pts = [basis.delta, basis.field.elem(1)]
    for i in range(count):
        b = mcf.terms[i % mcf.m]
        pts.append(b * pts[-1] - pts[-2])
    return pts


@dataclass(frozen=True)
class XYSeq:
    """Fractional coordinates x_i in (0,1], y_i in [0,1) for i = 0..count."""

    xs: tuple[Fraction, ...]
    ys: tuple[Fraction, ...]


def yamamoto_xy(label: RayLabel, mcf: MinusCF, count: int) -> XYSeq:
    """x_0 = <D/q>, y_0 = C/q, x_{i+1} = <b_i x_i - x_{i-1}> with x_{-1} = (q-C)/q."""
    q = label.q
    x_prev = Fraction(q - label.C, q)  # x_{-1} = 1 - y_0
    xs = [frac_unit(Fraction(label.D, q))]
    ys = [Fraction(label.C, q)]
    for i in range(count):
        b = mcf.terms[i % mcf.m]
        x_next = frac_unit(b * xs[-1] - x_prev)
        x_prev = xs[-1]
        xs.append(x_next)
        ys.append(1 - x_prev)
    return XYSeq(tuple(xs), tuple(ys))


def xy_direct(
    label: RayLabel, i: int, boundary: list[QuadElem], basis: ModuleBasis
) -> tuple[Fraction, Fraction]:
    """The unique (x, y) in (0,1] x [0,1) with x*P_{i-1} + y*P_i congruent to
    (C + D*delta)/q modulo [1, delta].

    Solves the unimodular 2x2 system directly; independent oracle for the
    Yamamoto recursion.
    """
    p_prev, p_cur = boundary[i], boundary[i + 1]  # P_{i-1}, P_i
    u1, v1 = coords_in_basis(p_prev, basis)
    u2, v2 = coords_in_basis(p_cur, basis)
    det = u1 * v2 - u2 * v1
    if abs(det) != 1:
        raise InternalCheckError("consecutive boundary points are not unimodular")
    t0, t1 = Fraction(label.C, label.q), Fraction(label.D, label.q)
    # invert [[u1,u2],[v1,v2]] exactly
    x = (v2 * t0 - u2 * t1) / det
    y = (-v1 * t0 + u1 * t1) / det
    x = frac_unit(x)
    y = y - (y.numerator // y.denominator)
    return x, y


def partial_zeta0(ctx: ConeContext, label: RayLabel) -> Fraction:
    """Exact zeta_q(0, (C+D*delta)*b).

    Computed both as the single sum over i = 1..lambda*m and as the
    orbit-decomposed double sum; the two must agree.
    """
    if gcd(ctx.label_norm(label), ctx.q) != 1:
        raise LabelError("label lies outside F_delta")
    m, lam = ctx.mcf.m, ctx.lam
    total_len = lam * m
    seq = yamamoto_xy(label, ctx.mcf, total_len)
    value = Fraction(0)
    for i in range(1, total_len + 1):
        b = ctx.mcf.terms[i % m]
        value += -bernoulli1(seq.xs[i]) * bernoulli1(seq.xs[i - 1]) + Fraction(
            b, 2
        ) * bernoulli2(seq.xs[i])

    by_orbit = Fraction(0)
    for member in orbit(label, ctx):
        mseq = yamamoto_xy(member, ctx.mcf, m)
        for i in range(1, m + 1):
            b = ctx.mcf.terms[i % m]
            by_orbit += -bernoulli1(mseq.xs[i]) * bernoulli1(mseq.xs[i - 1]) + Fraction(
                b, 2
            ) * bernoulli2(mseq.xs[i])
    if by_orbit != value:
        raise InternalCheckError(
            f"orbit-decomposed sum {by_orbit} differs from direct sum {value}"
        )
    return value
