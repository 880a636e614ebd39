"""Tests for exact quadratic-field arithmetic and the unit machinery."""

import math
from fractions import Fraction

import pytest

from rayzeta.quadfield import (
    ModuleBasis,
    QuadField,
    conj,
    coords_in_basis,
    eval_coords,
    fundamental_unit_totally_positive,
    is_perfect_square,
    is_squarefree,
    is_totally_positive,
    norm,
    squarefree_part,
    trace,
    unit_index_lambda,
)


def test_squarefree_classification():
    assert is_squarefree(30)
    assert is_squarefree(105)
    assert not is_squarefree(4)
    assert not is_squarefree(27)
    assert not is_squarefree(12)


def test_squarefree_part():
    assert squarefree_part(27) == 3
    assert squarefree_part(50) == 2
    assert squarefree_part(30) == 30


def test_perfect_square_detection():
    squares = {n * n for n in range(40)}
    for n in range(1, 1000):
        assert is_perfect_square(n) == (n in squares)


def test_elem_arithmetic():
    K = QuadField(3)
    x = K.elem(2, 1)  # 2 + sqrt(3)
    y = K.elem(1, -1)
    assert x + y == K.elem(3)
    assert x * y == K.elem(2 - 3, -1)  # (2+s)(1-s) = 2 - 2s + s - 3
    assert x - x == K.elem(0)
    assert (x / x) == K.elem(1)


def test_norm_trace_conj():
    K = QuadField(3)
    x = K.elem(2, 1)
    assert norm(x) == 1
    assert trace(x) == 4
    assert conj(x) == K.elem(2, -1)
    assert x * conj(x) == K.elem(1)


def test_sign_and_comparisons_match_floats():
    K = QuadField(7)
    root = math.sqrt(7)
    for a in range(-6, 7):
        for b in range(-4, 5):
            x = K.elem(Fraction(a, 3), Fraction(b, 2))
            approx = a / 3 + (b / 2) * root
            assert x.sign() == (0 if approx == 0 else (1 if approx > 0 else -1))


def test_floor_and_ceil_match_floats():
    K = QuadField(13)
    root = math.sqrt(13)
    for a in range(-10, 11):
        for b in range(-6, 7):
            x = K.elem(Fraction(a, 2), Fraction(b, 3))
            approx = a / 2 + (b / 3) * root
            assert x.floor() == math.floor(approx)
            assert x.ceil() == math.ceil(approx)


def test_totally_positive():
    K = QuadField(3)
    assert is_totally_positive(K.elem(2, 1))  # both embeddings ~ 3.73, 0.27
    assert not is_totally_positive(K.elem(1, 1))  # conjugate is negative
    assert not is_totally_positive(K.elem(-2, -1))


def test_module_basis_validates_reduction():
    K = QuadField(3)
    delta = K.elem(2, 1)  # delta > 1 and 0 < delta' < 1
    basis = ModuleBasis(delta)
    assert basis.delta == delta
    with pytest.raises(ValueError):
        ModuleBasis(K.elem(1, 1))  # conjugate negative


def test_coords_round_trip():
    K = QuadField(11)
    delta = K.elem(10, 3)  # 10 + 3*sqrt(11): delta' = 10 - 9.95 in (0,1)
    basis = ModuleBasis(delta)
    x = K.elem(Fraction(7, 2), Fraction(5, 3))
    u, v = coords_in_basis(x, basis)
    assert eval_coords(u, v, basis) == x
    assert u + v * delta == x


def test_fundamental_unit_small_fields():
    K3 = QuadField(3)
    basis3 = ModuleBasis(K3.elem(2, 1))
    eps3 = fundamental_unit_totally_positive(basis3)
    assert eps3 == K3.elem(2, 1)

    K11 = QuadField(11)
    basis11 = ModuleBasis(K11.elem(10, 3))
    eps11 = fundamental_unit_totally_positive(basis11)
    assert eps11 == K11.elem(10, 3)


def test_fundamental_unit_properties():
    for delta_pair, Delta in [((2, 1), 3), ((10, 3), 11), ((3, 1), 6)]:
        K = QuadField(Delta)
        basis = ModuleBasis(K.elem(*delta_pair))
        eps = fundamental_unit_totally_positive(basis)
        assert norm(eps) == 1
        assert is_totally_positive(eps)
        u, v = coords_in_basis(eps, basis)
        assert u.denominator == 1 and v.denominator == 1


def test_unit_index_lambda_counts_orbit_period():
    K = QuadField(3)
    basis = ModuleBasis(K.elem(2, 1))
    eps = fundamental_unit_totally_positive(basis)
    for q in (2, 3, 5):
        lam = unit_index_lambda(eps, q, basis)
        # eps^lam must have coordinates congruent to (1, 0) mod q,
        # and no smaller positive power may.
        power = K.elem(1)
        for j in range(1, lam + 1):
            power = power * eps
            u, v = coords_in_basis(power, basis)
            hit = (u - 1) % q == 0 and v % q == 0
            assert hit == (j == lam)
