"""Tests for plus and minus continued fractions and their conversion."""

import pytest

from rayzeta.contfrac import (
    MinusCF,
    NotReducedError,
    PeriodicCF,
    cf_value,
    minus_cf,
    pair_count,
    plus_cf,
    plus_to_minus,
    s_indices,
)
from rayzeta.quadfield import QuadField


def test_term_validation():
    with pytest.raises(ValueError):
        PeriodicCF((2, 0))
    with pytest.raises(ValueError):
        MinusCF((2, 1))
    assert PeriodicCF((2, 1)).s == 2
    assert MinusCF((4,)).m == 1


def test_plus_cf_golden_like():
    # 1 + sqrt(3) is reduced with purely periodic expansion [[2, 1]]
    K = QuadField(3)
    cf = plus_cf(K.elem(1, 1))
    assert cf.terms == (2, 1)


def test_plus_cf_rejects_rationals_and_unreduced():
    K = QuadField(3)
    with pytest.raises(NotReducedError):
        plus_cf(K.elem(5, 0))
    with pytest.raises(NotReducedError):
        plus_cf(K.elem(5, 1))  # conjugate is positive, not reduced


def test_minus_cf_small_cases():
    K = QuadField(3)
    assert minus_cf(K.elem(2, 1)).terms == (4,)
    K11 = QuadField(11)
    cf = plus_cf(K11.elem(3, 1))  # 3 + sqrt(11) ~ 6.32 is reduced
    assert cf.terms[0] == 6


def test_cf_value_inverts_plus_cf():
    for Delta, pair in [(3, (1, 1)), (11, (3, 1)), (6, (2, 1))]:
        K = QuadField(Delta)
        x = K.elem(*pair)
        try:
            cf = plus_cf(x)
        except NotReducedError:
            continue
        assert cf_value(cf) == x


def test_cf_value_round_trip_from_terms():
    cf = PeriodicCF((2, 1))
    x = cf_value(cf)
    assert plus_cf(x).terms == (2, 1)


def test_pair_count():
    assert pair_count(2) == 1
    assert pair_count(4) == 2
    assert pair_count(1) == 1
    assert pair_count(3) == 3


def test_s_indices_partial_sums():
    cf = PeriodicCF((4, 3, 2, 5))
    idx = s_indices(cf)
    # S_0 = 0, S_j = S_{j-1} + a_{2j-1}
    assert idx[0] == 0
    assert idx[1] == idx[0] + 3
    assert idx[2] == idx[1] + 5


def test_plus_to_minus_matches_direct_expansion():
    # delta - 1 = [[2, 1]] for delta = 2 + sqrt(3); minus CF of delta is ((4,))
    K = QuadField(3)
    cf = plus_cf(K.elem(1, 1))
    mcf = plus_to_minus(cf)
    assert mcf.terms == minus_cf(K.elem(2, 1)).terms == (4,)


@pytest.mark.parametrize("pair,Delta", [((3, 1), 11), ((2, 1), 6), ((4, 1), 19)])
def test_plus_to_minus_cross_validated(pair, Delta):
    K = QuadField(Delta)
    x = K.elem(*pair)
    try:
        cf = plus_cf(x)
    except NotReducedError:
        pytest.skip("not reduced")
    mcf = plus_to_minus(cf)  # validate=True checks against minus_cf(x + 1)
    assert all(b >= 2 for b in mcf.terms)


def test_minus_cf_term_structure():
    # the large terms a_{2j} + 2 sit at the S_j positions, twos in between
    K = QuadField(11)
    cf = plus_cf(K.elem(3, 1))
    mcf = plus_to_minus(cf)
    a = cf.terms
    assert mcf.m == sum(a[2 * j - 1] for j in range(1, pair_count(cf.s) + 1))
    assert mcf.terms.count(2) == mcf.m - pair_count(cf.s)
