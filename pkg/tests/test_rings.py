import itertools

import pytest
from gmpy2 import mpq
from hypothesis import given

from conftest import elements
from skewps.rings import (
    K4QuotientRing, NotUnit, PolyRing, PrimeField, RationalField, SkewPair, TruncPolyRing,
    k4_delta, ring_from_id, try_invert_element,
)
from skewps.scenarios import CATALOG_RINGS
from skewps.validation import validate_ring, validate_skew_derivation


@pytest.mark.parametrize("rid", CATALOG_RINGS)
def test_catalog_ring_axioms(rid):
    rep = validate_ring(ring_from_id(rid), sample_count=100, seed=3)
    assert rep.passed, rep.failures()


@pytest.mark.parametrize("rid", CATALOG_RINGS)
def test_catalog_skew_derivations(rid):
    rep = validate_skew_derivation(ring_from_id(rid), sample_count=100, seed=4)
    assert rep.passed, rep.failures()


def test_ring_ids_roundtrip():
    for rid in CATALOG_RINGS:
        assert ring_from_id(rid).id == rid


@pytest.mark.parametrize("bad", ["", "ZZ", "Fp:8", "Fp", "poly_trunc:3:dt", "poly_qscale:0", "k4_quotient:Fp:9"])
def test_bad_ring_ids(bad):
    with pytest.raises(ValueError):
        ring_from_id(bad)


class CorruptedK4(K4QuotientRing):
    """K4 with a bilinear, non-associative perturbation of the product."""

    def mul(self, a, b):
        out = list(super().mul(a, b))
        out[12] = out[12] + a[4] * b[4]
        return tuple(out)


def test_corrupted_multiplication_is_caught():
    rep = validate_ring(CorruptedK4(), sample_count=200, seed=0)
    assoc = rep.check("mul_associative")
    assert not assoc.passed
    assert len(assoc.witness) == 3


def test_wrong_twist_breaks_leibniz():
    R = PolyRing("dt")
    # d/dt paired with t -> 2t is not a skew derivation
    twist = lambda a: tuple(c * mpq(2) ** i for i, c in enumerate(a))  # noqa: E731
    untwist = lambda a: tuple(c / mpq(2) ** i for i, c in enumerate(a))  # noqa: E731
    rep = validate_skew_derivation(R, SkewPair(twist, untwist, R.delta), sample_count=50, seed=1)
    assert not rep.check("leibniz").passed


# -- the four-dimensional example against an independent model -------------
#
# T = k^4[x^{+-1}; alpha] with x c = alpha(c) x and alpha(a, b, c, d) = (b, c, d, a).
# Elements are dicts {n: 4-tuple}. Here delta on T is t -> e x^-1 t - tau(t) e x^-1
# with tau(c x^n) = alpha^-1(c) x^n, which must restrict to the quotient ring.


def _alpha(c, n):
    n %= 4
    return tuple(c[(j + n) % 4] for j in range(4))


def _tmul(a, b):
    out = {}
    for (n, c), (m, d) in itertools.product(a.items(), b.items()):
        ad = _alpha(d, n)
        prod = tuple(c[j] * ad[j] for j in range(4))
        cur = out.get(n + m, (0, 0, 0, 0))
        out[n + m] = tuple(cur[j] + prod[j] for j in range(4))
    return {n: c for n, c in out.items() if any(c)}


def _tsub(a, b):
    out = dict(a)
    for n, c in b.items():
        cur = out.get(n, (0, 0, 0, 0))
        out[n] = tuple(cur[j] - c[j] for j in range(4))
    return {n: c for n, c in out.items() if any(c)}


def _ttau(a):
    return {n: _alpha(c, -1) for n, c in a.items()}


def _t_delta(a):
    e_xinv = {-1: (0, 0, 0, 1)}
    return _tsub(_tmul(e_xinv, a), _tmul(_ttau(a), e_xinv))


def _to_T(R, r):
    return {n: tuple(int(r[4 * n + j]) for j in range(4)) for n in range(4) if any(r[4 * n: 4 * n + 4])}


def _from_T(R, a):
    assert all(0 <= n <= 3 for n in a), a
    return R.element(a)


def test_k4_delta_matches_T_model():
    R = K4QuotientRing()
    for n in range(4):
        for j in range(4):
            b = R.basis_element(j, n)
            want = _from_T(R, _t_delta(_to_T(R, b)))
            assert R.delta(b) == want
            c = tuple(int(j2 == j) for j2 in range(4))
            assert k4_delta(c, n, R) == want


def test_k4_tau_matches_T_model():
    R = K4QuotientRing()
    for n in range(4):
        for j in range(4):
            b = R.basis_element(j, n)
            assert R.tau(b) == _from_T(R, _ttau(_to_T(R, b)))


def test_k4_mul_matches_T_model():
    R = K4QuotientRing()
    basis = R.spanning_set()
    for a, b in itertools.product(basis, repeat=2):
        prod = _tmul(_to_T(R, a), _to_T(R, b))
        prod = {n: c for n, c in prod.items() if n < 4}
        assert R.mul(a, b) == _from_T(R, prod)


def test_k4_delta_on_x_is_outside_x_ideal():
    R = K4QuotientRing()
    assert R.delta(R.literal("x")) == R.element({0: (0, 0, -1, 1)})


def test_k4_quotient_over_fp():
    R = K4QuotientRing(PrimeField(5))
    rep = validate_ring(R, sample_count=50, seed=2)
    assert rep.passed


# -- inverses ----------------------------------------------------------------


def test_field_inverse():
    Q = RationalField()
    assert Q.inverse(mpq(3, 4)) == mpq(4, 3)
    with pytest.raises(NotUnit):
        Q.inverse(Q.zero)


def test_fp_inverse():
    F = PrimeField(7)
    for a in range(1, 7):
        assert F.mul(a, F.inverse(a)) == 1


def test_poly_units_are_constants():
    R = PolyRing("dt")
    assert R.inverse((mpq(2),)) == (mpq(1, 2),)
    with pytest.raises(NotUnit):
        R.inverse(R.t())


def test_trunc_poly_unit():
    R = TruncPolyRing(4)
    u = R.add(R.one, R.t())
    inv = try_invert_element(R, u)
    assert R.mul(u, inv) == R.one
    with pytest.raises(NotUnit):
        R.inverse(R.t())


@given(elements(K4QuotientRing()))
def test_k4_inverse_is_two_sided_or_not_unit(a):
    R = K4QuotientRing()
    try:
        b = R.inverse(a)
    except NotUnit:
        assert any(R.field.is_zero(a[j]) for j in range(4))
        return
    assert R.mul(a, b) == R.one and R.mul(b, a) == R.one


@given(elements(K4QuotientRing()), elements(K4QuotientRing()))
def test_k4_leibniz(a, b):
    R = K4QuotientRing()
    lhs = R.delta(R.mul(a, b))
    rhs = R.add(R.mul(R.tau(a), R.delta(b)), R.mul(R.delta(a), b))
    assert lhs == rhs


@given(elements(PolyRing("euler")), elements(PolyRing("euler")))
def test_euler_leibniz(a, b):
    R = PolyRing("euler")
    assert R.delta(R.mul(a, b)) == R.add(R.mul(R.tau(a), R.delta(b)), R.mul(R.delta(a), b))


@given(elements(ring_from_id("poly_qscale:3")))
def test_qscale_tau_roundtrip(a):
    R = ring_from_id("poly_qscale:3")
    assert R.tau_inv(R.tau(a)) == a
