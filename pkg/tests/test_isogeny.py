import pytest
from hypothesis import given, settings, strategies as st

from k3sandwich.errors import InputError, NoRationalPreimage, PointNotOnCurve
from k3sandwich.exactalg import Poly, T
from k3sandwich.ellsurf import (
    ZERO,
    WeierstrassModel,
    euler_number,
    fiber_table,
    from_cubic,
    height,
    j_invariant,
    kodaira_classify,
    ns_disc,
    point,
    point_add,
    point_mul,
)
from k3sandwich.isogeny import dual, j_match, map_point, preimage_point, quotient_curve

S2 = WeierstrassModel.extended(T ** 4 - T - 1, T)
P2 = point(1, T ** 2)
S3 = WeierstrassModel.extended(T ** 4 + T ** 2 - T + 1, T ** 3)
P3 = point(T ** 2, T ** 4 + T ** 2)


def test_quotient_normal_form():
    iso = quotient_curve(WeierstrassModel.extended(T ** 4 + 1, T))
    assert iso.target.a == -2 * (T ** 4 + 1)
    assert iso.target.b == (T ** 4 + 1) ** 2 - 4 * T
    with pytest.raises(InputError):
        quotient_curve(WeierstrassModel.short(T, 1 + T))


@pytest.mark.parametrize("b,expected", [
    (T, {"I7": 1, "I1": 1, "I2": 8}),
    (T ** 3, {"I5": 1, "I3": 1, "I2": 8}),
])
def test_quotient_tables(b, expected):
    Y = quotient_curve(WeierstrassModel.extended(T ** 4 + 1, b)).target
    fibres = kodaira_classify(Y)
    assert fiber_table(fibres) == expected
    assert euler_number(fibres) == 24


def test_quotient_of_alternate_fibration():
    W = from_cubic(2 * T + 3, T ** 3 + 5 * T + 7, 11 * T + 13)
    assert fiber_table(kodaira_classify(quotient_curve(W).target)) == {"I4*": 1, "I1": 2, "I2": 6}


def test_map_point_basics():
    iso = quotient_curve(S2)
    assert map_point(iso, ZERO) == ZERO
    assert map_point(iso, iso.kernel) == ZERO
    with pytest.raises(PointNotOnCurve):
        map_point(iso, point(2, T))


def test_heights_double():
    for W, P in ((S2, P2), (S3, P3)):
        iso = quotient_curve(W)
        assert height(iso.target, map_point(iso, P)) == 2 * height(W, P)


def test_dual_composition():
    for W, P in ((S2, P2), (S3, P3)):
        iso = quotient_curve(W)
        back = dual(iso)
        assert back.target == W
        assert map_point(back, map_point(iso, P)) == point_mul(W, P, 2)


def test_j_match():
    assert j_match(WeierstrassModel.extended(T ** 4 + 1, T))
    assert j_match(WeierstrassModel.extended(T ** 4 + 1, T ** 3))
    assert j_match(WeierstrassModel.extended(Poly(), Poly.const(1)))  # y^2 = x(x^2 + 1)


def test_preimage_round_trip():
    iso = quotient_curve(S2)
    Q = preimage_point(iso, map_point(iso, P2))
    assert Q in (P2, point_add(S2, P2, iso.kernel))


def test_halving_witness_n4():
    iso = quotient_curve(S2)
    Y = iso.target
    Q = preimage_point(dual(iso), P2)
    fibres = kodaira_classify(Y)
    assert point_mul(Y, Q, 2) == map_point(iso, P2)
    assert height(Y, Q, fibres) * 7 == 4
    assert ns_disc(fibres, [[height(Y, Q, fibres)]], 2) == 2 ** 8


def test_no_rational_preimage():
    # (0, 0) on the quotient comes from the roots of x^2 + a x + b, irrational here
    iso = quotient_curve(S2)
    Y = iso.target
    shifted = point_add(Y, map_point(iso, P2), point(0, 0))
    with pytest.raises(NoRationalPreimage):
        preimage_point(iso, shifted)
    with pytest.raises(NoRationalPreimage):
        preimage_point(iso, point(0, 0))


@given(st.lists(st.integers(-3, 3), min_size=5, max_size=5).filter(lambda c: c[0] and c[4]),
       st.sampled_from([1, 3]))
@settings(max_examples=20, deadline=None)
def test_double_quotient_j(coeffs, k):
    W = WeierstrassModel.extended(Poly(coeffs), T ** k)
    iso = quotient_curve(W)
    twice = quotient_curve(iso.target).target
    assert j_invariant(twice) == j_invariant(W)
    assert euler_number(kodaira_classify(iso.target)) == 24
