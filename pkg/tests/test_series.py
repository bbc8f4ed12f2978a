import random

import pytest
from gmpy2 import mpq
from hypothesis import given, strategies as st

from conftest import series_of
from skewps import series as ser
from skewps.config import check_precision, max_precision, set_max_precision
from skewps.rings import K4QuotientRing, NotUnit, PolyRing, ring_from_id
from skewps.scenarios import (
    CATALOG_RINGS, check_gr_leading, check_left_right, check_series_axioms, check_unit_lemma,
    sample_nonunit, sample_unit,
)

DT = PolyRing("dt")
EULER = PolyRing("euler")
K4 = K4QuotientRing()


def t(R=DT):
    return R.t()


# -- basic operations -------------------------------------------------------


def test_z_times_z():
    for rid in CATALOG_RINGS:
        R = ring_from_id(rid)
        z = ser.z_power(R, 1, 5)
        zz = ser.mul(z, z)
        # valuation 1 on each side buys one extra known order
        assert zz.precision == 6 and zz == ser.z_power(R, 2, 6)


def test_mul_t_z_matches_commute_right():
    f = ser.constant(DT, t(), 4)
    z = ser.z_power(DT, 1, 4)
    assert ser.mul(f, z) == ser.commute_right(t(), 1, 4, DT)


def test_zero_derivation_collapses():
    R = ring_from_id("poly_qscale:5")
    r = R.add(R.one, R.t())
    assert ser.commute_right(r, 1, 6, R).terms() == [(1, R.tau(r))]
    assert ser.commute_left(r, 6, R).terms() == [(1, R.tau_inv(r))]


def test_addition_rules():
    f = ser.series(DT, {1: t()}, 4)
    assert ser.add(f, ser.zero(DT, 4)).strict_eq(f)
    assert ser.add(f, ser.negate(f)).is_zero()
    assert ser.add(f, f).strict_eq(ser.series(DT, {1: DT.add(t(), t())}, 4))


def test_precision_of_products():
    f = ser.series(DT, {1: t()}, 5)
    g = ser.series(DT, {2: DT.one}, 7)
    # known mod z^min(5 + 2, 7 + 1)
    assert ser.mul(f, g).precision == 7


def test_precision_cap():
    old = max_precision()
    try:
        set_max_precision(6)
        f = ser.series(DT, {0: DT.one}, 6)
        assert ser.mul(f, f).precision <= 6
        with pytest.raises(ValueError):
            check_precision(7)
    finally:
        set_max_precision(old)


def test_ring_mismatch_is_rejected():
    with pytest.raises(TypeError):
        ser.mul(ser.one(DT, 3), ser.one(EULER, 3))


def test_equality_at_common_precision():
    a = ser.series(DT, {0: DT.one, 3: t()}, 5)
    b = ser.truncate(a, 3)
    assert a == b
    assert not a.strict_eq(b)


def test_invert_one():
    assert ser.invert(ser.one(K4, 6)).strict_eq(ser.one(K4, 6))


def test_invert_rejects_nonunit():
    with pytest.raises(NotUnit):
        ser.invert(ser.z_power(DT, 1, 4))
    with pytest.raises(NotUnit):
        ser.invert(ser.series(K4, {0: K4.literal("e1"), 1: K4.one}, 4))


def test_is_unit_examples():
    r = DT.add(DT.one, t())
    assert ser.is_unit(ser.add(ser.one(DT, 6), ser.series(DT, {1: r}, 6)))
    assert not ser.is_unit(ser.z_power(DT, 1, 6))
    assert not ser.is_unit(ser.series(K4, {0: K4.literal("e1"), 1: K4.one}, 6))


def test_degenerate_precision():
    with pytest.raises(ser.DegeneratePrecision):
        ser.invert(ser.zero(DT, 0))


def test_initial_data():
    f = ser.series(DT, {2: t()}, 6)
    d = ser.initial_data(f)
    assert (d.valuation, d.initial_right, d.constant) == (2, t(), DT.zero)
    g = ser.series(DT, {0: t(), 1: DT.add(t(), DT.one)}, 6)
    assert ser.initial_data(g).constant == ser.initial_data(ser.to_left_form(g)).constant == t()
    with pytest.raises(ser.ZeroToPrecision):
        ser.initial_data(ser.zero(DT, 4))


def test_gr_leading_qscale_example():
    R = ring_from_id("poly_qscale:2")
    f = ser.series(R, {1: R.t()}, 6)
    assert ser.gr_leading_check(f, f) is True


def test_gr_leading_inconclusive_on_zero_divisors():
    w = K4.mul(K4.literal("v"), K4.mul(K4.literal("x"), K4.literal("x")))
    f = ser.series(K4, {1: w}, 6)
    g = ser.series(K4, {1: w}, 6)
    assert ser.gr_leading_check(f, g) is None


def test_to_left_form_with_zero_derivation():
    R = ring_from_id("poly_qscale:3")
    r = R.add(R.one, R.t())
    f = ser.series(R, {2: r}, 5)
    assert ser.to_left_form(f).terms() == [(2, R.tau_inv(R.tau_inv(r)))]


# -- properties --------------------------------------------------------------


@pytest.mark.parametrize("rid", ["poly_dt", "poly_euler", "k4_quotient", "poly_trunc:3:euler"])
def test_associativity_sampled(rid):
    rep = check_series_axioms(ring_from_id(rid), N=6, samples=60, seed=1, normality_samples=30)
    assert rep.passed, rep.failures()


@given(series_of(DT, 6), series_of(DT, 6), series_of(DT, 6))
def test_associative_dt(f, g, h):
    assert ser.mul(ser.mul(f, g), h) == ser.mul(f, ser.mul(g, h))


@given(series_of(K4, 5, max_terms=3), series_of(K4, 5, max_terms=3), series_of(K4, 5, max_terms=3))
def test_associative_k4(f, g, h):
    assert ser.mul(ser.mul(f, g), h) == ser.mul(f, ser.mul(g, h))


@given(series_of(EULER, 6), series_of(EULER, 6), series_of(EULER, 6))
def test_distributive_euler(f, g, h):
    assert ser.mul(f, ser.add(g, h)) == ser.add(ser.mul(f, g), ser.mul(f, h))
    assert ser.mul(ser.add(f, g), h) == ser.add(ser.mul(f, h), ser.mul(g, h))


@given(series_of(K4, 8))
def test_side_roundtrip_k4(f):
    assert ser.to_right_form(ser.to_left_form(f)).strict_eq(f)


@given(series_of(DT, 8))
def test_left_form_describes_same_element(f):
    # multiplying the left-form terms back together recovers f
    lf = ser.to_left_form(f)
    total = ser.zero(DT, f.precision)
    for i, c in lf.terms():
        total = ser.add(total, ser.mul(ser.constant(DT, c, f.precision), ser.z_power(DT, i, f.precision)))
    assert total.strict_eq(f)


@given(st.integers(0, 2 ** 32), st.sampled_from(["poly_dt", "k4_quotient", "poly_trunc:4:euler", "Fp:11"]))
def test_inverse_two_sided(seed, rid):
    R = ring_from_id(rid)
    rng = random.Random(seed)
    N = 7
    f = ser.add(ser.constant(R, sample_unit(R, rng), N),
                ser.mul(ser.z_power(R, 1, N), ser.sample_series(R, rng, N)))
    g = ser.invert(f)
    one = ser.one(R, N)
    assert ser.mul(f, g) == one and ser.mul(g, f) == one


@given(st.integers(0, 2 ** 32))
def test_nonunit_constant_gives_nonunit(seed):
    rng = random.Random(seed)
    r = sample_nonunit(K4, rng)
    f = ser.add(ser.constant(K4, r, 5), ser.z_power(K4, 1, 5))
    assert not ser.is_unit(f)


@given(series_of(DT, 8), series_of(DT, 8))
def test_gr_leading_domain(f, g):
    if f.is_zero() or g.is_zero():
        return
    assert ser.gr_leading_check(f, g) is True


def test_unit_lemma_report():
    rep = check_unit_lemma(K4, N=8, samples=20, seed=5)
    assert rep.passed


def test_left_right_report():
    rep = check_left_right(EULER, N=6, samples=40, seed=5)
    assert rep.passed


def test_gr_leading_report_counts_inconclusive():
    rep = check_gr_leading(K4, N=6, samples=100, seed=3)
    assert rep.passed
    assert rep.get("leading_coefficient_law").detail["inconclusive"] >= 0


def test_json_roundtrip():
    f = ser.series(K4, {1: K4.literal("x"), 3: K4.literal("v")}, 6)
    assert ser.SkewSeries.from_json(K4, f.to_json()).strict_eq(f)


def test_scalar_right_scaling():
    f = ser.series(DT, {1: t()}, 4)
    assert ser.scale_right(f, (mpq(3),)).coeff(1) == DT.mul(t(), (mpq(3),))
