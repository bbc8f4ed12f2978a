import random

import pytest
from gmpy2 import mpq

from skewps import series as ser
from skewps.tower import (
    CustomLevel, LevelSpec, TowerConfigError, TowerSpec, build_tower, extend_tau_q, in_z_ideal,
    lift_D, lift_sigma, normalizing_check, qint, tower_unit_check, weyl_commutation_check, weyl_tower,
)


def spec(levels, base="QQ", N=5):
    return TowerSpec.from_json({"base": base, "precision": N, "levels": levels})


def test_single_level_is_plain_series():
    T = build_tower(spec([{"kind": "delta0", "q": "1"}]))
    z = T.var("zd")
    assert ser.mul(z, z) == ser.z_power(T.levels[0].coeff, 2, 5)


def test_weyl_levels_and_names():
    T = build_tower(spec([{"kind": "weyl", "q": "1", "d": "1"}, {"kind": "weyl", "q": "2", "d": "1"}], N=3))
    assert T.names == ["zx", "zy", "zx2", "zy2"]


@pytest.mark.parametrize("q,d", [("1", "1"), ("2", "1"), ("1/3", "1"), ("1", "0"), ("3", "0"), ("2", "5")])
def test_weyl_commutation(q, d):
    rep = weyl_commutation_check(q, d, N=8, oracle_N=5, seed=0)
    assert rep.passed, rep.failures()


def test_qint():
    assert qint(3, 2) == 7
    assert qint(0, 5) == 0
    assert qint(-1, 2) == mpq(-1, 2)
    assert qint(4, 1) == 4


def test_lift_identities():
    T = weyl_tower(2, 3, 6)
    X = T.levels[0].ring
    one = X.one
    assert lift_sigma(one, 2) == one
    assert lift_D(one, 2, 3).is_zero()
    # q = d = 1: D(z_x) = -z_x^2
    T1 = weyl_tower(1, 1, 6)
    zx = T1.levels[0].ring.gen()
    assert lift_D(zx, 1, 1) == ser.negate(ser.mul(zx, zx))


def test_extend_tau_q_multiplicative():
    T = build_tower(spec([{"kind": "weyl", "q": "2", "d": "3"}, {"kind": "delta0", "q": "2"}], N=4))
    rep = normalizing_check(T, samples=20, seed=1)
    assert rep.passed, rep.failures()


def test_delta0_with_q_one_over_identity_level():
    T = build_tower(spec([{"kind": "delta0", "q": "1"}, {"kind": "delta0", "q": "3"}], N=4))
    assert T.names == ["zd", "zd2"]


def test_rejects_q_not_matching_skew_relation():
    # the Weyl level with q = 1 has delta tau = tau delta, so a q = 2 extension is rejected
    with pytest.raises(TowerConfigError, match="q = 2"):
        build_tower(spec([{"kind": "weyl", "q": "1", "d": "1"}, {"kind": "delta0", "q": "2"}]))


def test_extend_tau_q_direct():
    T = weyl_tower(2, 1, 4)
    pair = extend_tau_q(T.levels[1].coeff, mpq(2))
    assert pair.delta is None


@pytest.mark.parametrize("bad", [
    {"base": "QQ", "precision": 4, "levels": []},
    {"base": "QQ", "precision": 4, "levels": [{"kind": "cubic"}]},
    {"base": "QQ", "precision": 4, "levels": [{"kind": "weyl", "q": "0", "d": "1"}]},
    {"base": "QQ", "precision": 4, "levels": [{"kind": "weyl", "q": "1", "d": "1", "extra": 1}]},
    {"base": "QQ", "precision": 0, "levels": [{"kind": "weyl"}]},
    {"base": "poly_dt", "precision": 4, "levels": [{"kind": "weyl"}]},
    {"base": "QQ", "precision": 4, "levels": [{"kind": "delta0", "q": "2"}]},
    {"base": "QQ", "precision": 4, "levels": [{"kind": "delta0", "q": "2", "d": "1"}]},
    {"base": "QQ", "precision": 4, "levels": [{"kind": "weyl"}], "colour": "red"},
])
def test_invalid_configs(bad):
    with pytest.raises(TowerConfigError):
        build_tower(bad)


def test_custom_level_must_raise_degree():
    base = TowerSpec("QQ", 4, [LevelSpec("weyl", "1", "1")])
    build_tower(base)
    identity = lambda f: f  # noqa: E731
    # a derivation of the z_y-series ring that does not raise the z_y-degree
    delta = lambda f: f  # noqa: E731
    bad = TowerSpec("QQ", 4, [LevelSpec("weyl", "1", "1"), CustomLevel(identity, identity, delta)])
    with pytest.raises(TowerConfigError, match="degree-raising"):
        build_tower(bad)


def test_custom_level_cannot_come_first():
    identity = lambda f: f  # noqa: E731
    with pytest.raises(TowerConfigError):
        build_tower(TowerSpec("QQ", 4, [CustomLevel(identity, identity, None)]))


def test_custom_level_with_identity_pair_builds():
    identity = lambda f: f  # noqa: E731
    T = build_tower(TowerSpec("QQ", 4, [LevelSpec("weyl", "1", "1"), CustomLevel(identity, identity, None)]))
    assert T.names == ["zx", "zy", "zc"]


def test_tower_units():
    T = weyl_tower(1, 1, 5)
    rep = tower_unit_check(T, samples=40, seed=2)
    assert rep.passed, rep.failures()


def test_tower_unit_examples():
    T = weyl_tower(1, 1, 5)
    A = T.ring
    f = A.add(A.one, A.mul(T.var("zx"), T.var("zy")))
    g = A.inverse(f)
    assert A.eq(A.mul(f, g), A.one) and A.eq(A.mul(g, f), A.one)
    assert not A.is_unit(T.var("zx"))
    c = T.scalar(mpq(3))
    assert A.eq(A.mul(c, A.inverse(c)), A.one)


def test_in_z_ideal():
    T = weyl_tower(1, 1, 5)
    A = T.ring
    zy, zx = T.var("zy"), T.var("zx")
    assert in_z_ideal(T, A.mul(zy, zx), 1)
    assert not in_z_ideal(T, A.add(A.one, zx), 1)


def test_tower_config_json_roundtrip():
    s = spec([{"kind": "weyl", "q": "2", "d": "3"}, {"kind": "delta0", "q": "2"}])
    assert TowerSpec.from_json(s.to_json()) == s


def test_nested_associativity():
    T = build_tower(spec([{"kind": "weyl", "q": "2", "d": "3"}, {"kind": "delta0", "q": "2"}], N=3))
    A = T.ring
    rng = random.Random(0)
    for _ in range(30):
        a, b, c = A.sample(rng), A.sample(rng), A.sample(rng)
        assert A.eq(A.mul(A.mul(a, b), c), A.mul(a, A.mul(b, c)))
