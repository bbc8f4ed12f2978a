import random

import pytest
from hypothesis import given, strategies as st

from conftest import series_of
from skewps import series as ser
from skewps.ideals import (
    MonomialIdeal, SeriesIdealSpec, SpanIdeal, UnitIdeal, ZeroIdeal, check_IS_equals_ideal,
    check_star_condition, check_tau_delta_ideal, make_ideal, sample_ideal_series, series_ideal_member,
)
from skewps.rings import K4QuotientRing, PolyRing, TruncPolyRing

EULER = PolyRing("euler")
DT = PolyRing("dt")
K4 = K4QuotientRing()


def t_ideal(R=EULER):
    return make_ideal(R, [R.t()])


def test_make_ideal_kinds():
    assert isinstance(make_ideal(EULER, []), ZeroIdeal)
    assert isinstance(make_ideal(EULER, [EULER.one]), UnitIdeal)
    assert isinstance(t_ideal(), MonomialIdeal)
    I = make_ideal(K4, [K4.literal("x")])
    assert isinstance(I, SpanIdeal) and I.dimension == 12


def test_tau_delta_ideal_examples():
    assert check_tau_delta_ideal(t_ideal(EULER))
    assert not check_tau_delta_ideal(t_ideal(DT))
    assert not check_tau_delta_ideal(make_ideal(K4, [K4.literal("x")]))


def test_series_ideal_needs_tau_delta_ideal():
    with pytest.raises(ValueError, match="delta"):
        SeriesIdealSpec(t_ideal(DT))


def test_membership_examples():
    spec = SeriesIdealSpec(t_ideal())
    t = EULER.t()
    t3 = EULER.mul(t, EULER.mul(t, t))
    assert series_ideal_member(ser.series(EULER, {1: t, 2: t3}, 6), spec)
    assert not series_ideal_member(ser.series(EULER, {0: EULER.one, 1: t}, 6), spec)


@given(st.integers(0, 2 ** 32))
def test_membership_is_side_independent(seed):
    I = t_ideal()
    rng = random.Random(seed)
    f = sample_ideal_series(I, rng, 7)
    assert series_ideal_member(ser.to_left_form(f), SeriesIdealSpec(I))
    assert all(I.contains(c) for c in ser.to_left_form(f).coeffs)


@pytest.mark.parametrize("power", [1, 2, 3])
def test_IS_equals_SI_monomial(power):
    t = EULER.t()
    g = EULER.one
    for _ in range(power):
        g = EULER.mul(g, t)
    rep = check_IS_equals_ideal(SeriesIdealSpec(make_ideal(EULER, [g])), N=6, samples=30, seed=power)
    assert rep.passed, rep.failures()


def test_IS_equals_SI_trivial_ideals():
    for I in (ZeroIdeal(EULER), UnitIdeal(EULER)):
        assert check_IS_equals_ideal(SeriesIdealSpec(I), N=5, samples=20, seed=0).passed


def test_IS_equals_SI_truncated_ring():
    R = TruncPolyRing(4)
    rep = check_IS_equals_ideal(SeriesIdealSpec(make_ideal(R, [R.t()])), N=6, samples=30, seed=2)
    assert rep.passed, rep.failures()


@pytest.mark.parametrize("tt", [1, 2, 3])
def test_star_condition(tt):
    rep = check_star_condition(t_ideal(), tt, samples=40, seed=tt)
    assert rep.passed, rep.failures()


def test_ideal_powers():
    I = t_ideal()
    t = EULER.t()
    t2 = EULER.mul(t, t)
    assert I.power(2).contains(t2) and not I.power(2).contains(t)
    J = make_ideal(K4, [K4.literal("x")])
    x = K4.literal("x")
    x4 = K4.mul(K4.mul(x, x), K4.mul(x, x))
    assert K4.is_zero(x4)
    assert J.power(2).contains(K4.mul(x, x)) and not J.power(2).contains(x)


# -- quotient compatibility -------------------------------------------------
#
# (t^3) is a tau-delta-ideal of Q[t] with the Euler derivation, so reduction
# mod t^3 is a ring map S -> (Q[t]/(t^3))[[z]].

TRUNC = TruncPolyRing(3)


def _reduce(f):
    return ser.SkewSeries.from_dense(TRUNC, [TRUNC._norm(c[:3]) for c in f.dense()], f.precision)


@given(series_of(EULER, 6), series_of(EULER, 6))
def test_reduction_mod_t3_is_multiplicative(f, g):
    assert _reduce(ser.mul(f, g)) == ser.mul(_reduce(f), _reduce(g))


@given(series_of(EULER, 6))
def test_reduction_mod_t3_commutes_with_left_form(f):
    lf = ser.to_left_form(f)
    red = ser.SkewSeries.from_dense(TRUNC, [TRUNC._norm(c[:3]) for c in lf.dense()], lf.precision, side=ser.LEFT)
    assert red.strict_eq(ser.to_left_form(_reduce(f)))
