"""Tests for labels, orbits, boundary points, and exact zeta values."""

from fractions import Fraction

import pytest

from rayzeta.family import PRESETS, instantiate
from rayzeta.quadfield import ModuleBasis, QuadField, coords_in_basis
from rayzeta.shintani import (
    ConeContext,
    LabelError,
    RayLabel,
    boundary_points,
    eps_act,
    f_delta,
    orbit,
    partial_zeta0,
    xy_direct,
    yamamoto_xy,
)


def anchor_ctx(q=2):
    """delta = 2 + sqrt(3): the smallest family member (n = 1)."""
    K = QuadField(3)
    return ConeContext(ModuleBasis(K.elem(2, 1)), q)


def test_label_validation():
    with pytest.raises(LabelError):
        RayLabel(0, 0, 2)
    with pytest.raises(LabelError):
        RayLabel(2, 0, 2)
    with pytest.raises(LabelError):
        RayLabel(-1, 1, 3)


def test_context_anchor_data():
    ctx = anchor_ctx()
    assert ctx.mcf.terms == (4,)
    assert ctx.lam == 2
    assert ctx.eps == ctx.basis.delta.field.elem(2, 1)


def test_f_delta_is_lexicographic_and_coprime():
    ctx = anchor_ctx(3)
    labels = f_delta(ctx)
    assert labels == sorted(labels, key=lambda lab: (lab.C, lab.D))
    from math import gcd
    for lab in labels:
        assert gcd(ctx.label_norm(lab), 3) == 1


def test_eps_act_preserves_f_delta():
    ctx = anchor_ctx(5)
    labels = set((lab.C, lab.D) for lab in f_delta(ctx))
    for lab in f_delta(ctx):
        img = eps_act(ctx.eps, lab, ctx.basis)
        assert (img.C, img.D) in labels


def test_orbit_length_is_lambda():
    ctx = anchor_ctx(3)
    for lab in f_delta(ctx):
        assert len(orbit(lab, ctx)) == ctx.lam


def test_boundary_points_recurrence_and_unimodularity():
    ctx = anchor_ctx()
    count = 8
    pts = boundary_points(ctx.basis, ctx.mcf, count)
    assert pts[0] == ctx.basis.delta
    assert pts[1] == ctx.basis.delta.field.elem(1)
    for i in range(count):
        b = ctx.mcf.terms[i % ctx.mcf.m]
        assert pts[i + 2] == b * pts[i + 1] - pts[i]
    for i in range(count):
        u1, v1 = coords_in_basis(pts[i], ctx.basis)
        u2, v2 = coords_in_basis(pts[i + 1], ctx.basis)
        assert abs(u1 * v2 - u2 * v1) == 1


def test_one_minus_period_recovers_unit():
    # P_m = eps^{-1}, so eps * P_m = 1
    ctx = anchor_ctx()
    pts = boundary_points(ctx.basis, ctx.mcf, ctx.mcf.m)
    assert ctx.eps * pts[ctx.mcf.m + 1] == ctx.basis.delta.field.elem(1)


def test_yamamoto_seed_values():
    ctx = anchor_ctx()
    lab = RayLabel(1, 0, 2)
    seq = yamamoto_xy(lab, ctx.mcf, 4)
    assert seq.xs[0] == 1  # <0/2> = 1 under the (0,1] convention
    assert seq.ys[0] == Fraction(1, 2)
    for x, y in zip(seq.xs, seq.ys):
        assert 0 < x <= 1
        assert 0 <= y < 1


def test_yamamoto_equals_direct_solve():
    for q in (2, 3, 5):
        ctx = anchor_ctx(q)
        total = ctx.lam * ctx.mcf.m
        pts = boundary_points(ctx.basis, ctx.mcf, total + 1)
        for lab in f_delta(ctx):
            seq = yamamoto_xy(lab, ctx.mcf, total)
            for i in range(total + 1):
                assert xy_direct(lab, i, pts, ctx.basis) == (seq.xs[i], seq.ys[i])


def test_partial_zeta_anchor_values():
    ctx = anchor_ctx()
    assert partial_zeta0(ctx, RayLabel(1, 0, 2)) == Fraction(1, 6)
    assert partial_zeta0(ctx, RayLabel(0, 1, 2)) == Fraction(1, 6)


def test_partial_zeta_constant_on_orbits():
    ctx = anchor_ctx(3)
    for lab in f_delta(ctx):
        values = {partial_zeta0(ctx, member) for member in orbit(lab, ctx)}
        assert len(values) == 1


def test_partial_zeta_rejects_labels_outside_f_delta():
    spec = PRESETS["rd-n2p2"].with_q(3)
    inst = instantiate(spec, 1)  # norm of (0 + 1*delta) = -2 mod 3 ... check gcd
    bad = [lab for C in range(3) for D in range(3) if (C, D) != (0, 0)
           for lab in [RayLabel(C, D, 3)]
           if lab not in f_delta(inst.ctx)]
    for lab in bad:
        with pytest.raises(LabelError):
            partial_zeta0(inst.ctx, lab)


def test_max_terms_cap(monkeypatch):
    K = QuadField(3)
    with pytest.raises(RuntimeError):
        ConeContext(ModuleBasis(K.elem(2, 1)), 2, max_terms=1)
    monkeypatch.setenv("RAYZETA_MAX_TERMS", "1")
    with pytest.raises(RuntimeError):
        ConeContext(ModuleBasis(K.elem(2, 1)), 2)
