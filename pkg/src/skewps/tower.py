"""Iterated extensions R_i = R_{i-1}[[z_i; tau_i, delta_i]] at uniform precision.

Every level is stored modulo z_i^N. Because each z_i is normal and every
shipped (tau_i, delta_i) preserves z_j^N for the lower variables, the
truncated objects form genuine rings, so checks inside a tower are exact.

Level kinds:

* ``weyl`` (q, d) adds two variables over the current ring T: first
  z_x with trivial twist, then z_y with the pair (sigma, D) on T[[z_x]],

      sigma(t z_x^j) = q^{-j} t z_x^j,     D(t z_x^j) = d [-j]_q t z_x^{j+1},

  where [m]_q = (q^m - 1)/(q - 1). With x = z_x^{-1} this is YX = qXY + d.
* ``delta0`` (q) adds z with zero derivation and tau extending the previous
  level's twist by tau(z_prev) = q z_prev; this needs
  delta_prev tau_prev = q tau_prev delta_prev, checked when the tower is built.
"""

import json
import random
from dataclasses import dataclass, field
from typing import Any, Callable, Optional

from skewps import laurent as lau
from skewps import series as ser
from skewps.config import check_precision
from skewps.report import Report
from skewps.rings import NotUnit, Ring, RationalField, SkewPair, TruncPolyRing, PrimeField, WithSkew, ring_from_id, to_qq
from skewps.series import SkewSeries
from skewps.laurent import SkewLaurentSeries
from skewps.validation import validate_skew_derivation

__all__ = [
    "TowerConfigError", "LevelSpec", "CustomLevel", "TowerSpec", "SeriesRing",
    "LaurentRing", "Level", "Tower", "build_tower", "qint", "extend_tau_q",
    "weyl_pair", "lift_sigma", "lift_D", "weyl_commutation_check",
    "tower_unit_check", "normalizing_check", "in_z_ideal", "weyl_tower",
]


class TowerConfigError(ValueError):
    """The tower description is malformed or violates a level contract."""


def qint(m, q, k=None):
    """[m]_q = (q^m - 1)/(q - 1) in the field ``k`` (m may be negative)."""
    k = k or RationalField()
    q = k.scalar(q)
    if m >= 0:
        out, p = k.zero, k.one
        for _ in range(m):
            out = k.add(out, p)
            p = k.mul(p, q)
        return out
    qi = k.inverse(q)
    out, p = k.zero, qi
    for _ in range(-m):
        out = k.sub(out, p)
        p = k.mul(p, qi)
    return out


# ---------------------------------------------------------------------------
# rings whose elements are truncated series / Laurent series


class SeriesRing(Ring):
    """coeff[[z]] modulo z^N as a ring (its own twist is trivial unless wrapped)."""

    has_delta = False

    def __init__(self, coeff, precision, var="z", name=None):
        self.coeff = coeff
        self.N = precision
        self.var = var
        self.field = coeff.field
        self.zero = ser.zero(coeff, precision)
        self.one = ser.one(coeff, precision)
        self.id = name or f"{coeff.id}[[{var}]]"

    def _norm(self, f):
        return ser.truncate(f, self.N)

    def add(self, a, b):
        return self._norm(ser.add(a, b))

    def neg(self, a):
        return ser.negate(a)

    def sub(self, a, b):
        return self._norm(ser.sub(a, b))

    def mul(self, a, b):
        return self._norm(ser.mul(a, b))

    def eq(self, a, b):
        return a == b

    def is_zero(self, a):
        return a.is_zero()

    def scalar(self, c):
        return ser.constant(self.coeff, self.coeff.scalar(c), self.N)

    def embed(self, r):
        """A coefficient as a constant series."""
        return ser.constant(self.coeff, r, self.N)

    def gen(self, k=1):
        return ser.z_power(self.coeff, k, self.N)

    def inverse(self, a):
        if not ser.is_unit(a):
            raise NotUnit(f"{self.format(a)} has a non-unit constant coefficient")
        return ser.invert(a)

    def is_unit(self, a):
        return ser.is_unit(a)

    def spanning_set(self):
        return [ser.z_power(self.coeff, i, self.N, b)
                for i in range(self.N) for b in self.coeff.spanning_set()]

    def sample(self, rng):
        return ser.sample_series(self.coeff, rng, self.N, max_terms=3)

    def literal(self, name):
        if name == self.var:
            return self.gen()
        r = self.coeff.literal(name)
        return None if r is None else self.embed(r)

    def format(self, a):
        parts = []
        for i, c in a.terms():
            zs = "" if i == 0 else (self.var if i == 1 else f"{self.var}^{i}")
            cs = self.coeff.format(c)
            parts.append(f"({cs})" if not zs else (zs if cs == "1" else f"{zs}*({cs})"))
        return " + ".join(parts) if parts else "0"

    def encode(self, a):
        return a.to_json()

    def decode(self, obj):
        return self._norm(SkewSeries.from_json(self.coeff, obj))


class LaurentRing(Ring):
    """coeff((z)) with elements known to absolute precision about N."""

    has_delta = False

    def __init__(self, coeff, precision, var="z", name=None, min_exponent=-3):
        self.coeff = coeff
        self.N = precision
        self.var = var
        self.field = coeff.field
        self.min_exponent = min_exponent
        self.zero = lau.from_series(ser.zero(coeff, precision))
        self.one = lau.laurent_constant(coeff, coeff.one, precision)
        self.id = name or f"{coeff.id}(({var}))"

    def add(self, a, b):
        return lau.laurent_add(a, b)

    def neg(self, a):
        return lau.laurent_negate(a)

    def sub(self, a, b):
        return lau.laurent_add(a, lau.laurent_negate(b))

    def mul(self, a, b):
        return lau.laurent_mul(a, b)

    def eq(self, a, b):
        return a == b

    def is_zero(self, a):
        return a.is_zero()

    def scalar(self, c):
        return lau.laurent_constant(self.coeff, self.coeff.scalar(c), self.N)

    def gen(self, k=1):
        return lau.laurent_z_power(self.coeff, k, self.N)

    def inverse(self, a):
        return lau.laurent_invert(a)

    def spanning_set(self):
        out = []
        for i in range(self.min_exponent, self.N):
            zi = lau.laurent_z_power(self.coeff, i, self.N)
            for b in self.coeff.spanning_set():
                out.append(lau.laurent_mul(zi, lau.laurent_constant(self.coeff, b, self.N)))
        return out

    def sample(self, rng):
        body = ser.sample_series(self.coeff, rng, self.N - self.min_exponent, max_terms=3)
        return lau.laurent(body, -self.min_exponent)

    def format(self, a):
        return a.format(with_order=False)

    def encode(self, a):
        return a.to_json()

    def decode(self, obj):
        return SkewLaurentSeries.from_json(self.coeff, obj)


# ---------------------------------------------------------------------------
# Weyl-level maps


def _termwise(f, fn, raise_by=0):
    """Apply ``fn(exponent, coeff) -> coeff`` to each term, moving it up by ``raise_by``.

    Works on right-form series and on Laurent series (absolute exponents).
    """
    if isinstance(f, SkewLaurentSeries):
        body = f.body
        R, P = body.ring, body.precision
        out = [R.zero] * P
        for k, c in body.terms():
            if k + raise_by < P:
                out[k + raise_by] = fn(k - f.shift, c)
        return lau.laurent(SkewSeries.from_dense(R, out, P), f.shift)
    f = ser.to_right_form(f)
    R, P = f.ring, f.precision
    out = [R.zero] * P
    for k, c in f.terms():
        if k + raise_by < P:
            out[k + raise_by] = fn(k, c)
    return SkewSeries.from_dense(R, out, P)


def lift_sigma(f, q):
    """sigma(t z^j) = q^{-j} t z^j, termwise (j may be negative)."""
    R = f.ring
    k = R.field
    q = k.scalar(q)
    qi = k.inverse(q)

    def fn(j, c):
        s = k.pow(qi, j) if j >= 0 else k.pow(q, -j)
        return R.mul(R.scalar(s), c)

    return _termwise(f, fn)


def lift_D(f, q, d):
    """D(t z^j) = d [-j]_q t z^{j+1}, termwise; the precision is kept."""
    R = f.ring
    k = R.field
    q, d = k.scalar(q), k.scalar(d)

    def fn(j, c):
        return R.mul(R.scalar(k.mul(d, qint(-j, q, k))), c)

    return _termwise(f, fn, raise_by=1)


def weyl_pair(q, d):
    """(sigma, sigma^{-1}, D) as maps on X-level series or Laurent series."""
    return SkewPair(
        tau=lambda f: lift_sigma(f, q),
        tau_inv=lambda f: lift_sigma(f, f.ring.field.inverse(q)),
        delta=lambda f: lift_D(f, q, d),
    )


def extend_tau_q(coeff, q, check=True):
    """Extend the twist of ``coeff`` to coeff[[z; tau, delta]] with tau(z) = q z.

    Returns a SkewPair acting on series over ``coeff`` with zero derivation.
    Raises TowerConfigError unless delta tau = q tau delta on the spanning set.
    """
    k = coeff.field
    q = k.scalar(q)
    qs = coeff.scalar(q)
    if check:
        if not coeff.eq(coeff.tau(qs), qs) or not coeff.is_zero(coeff.delta(qs)):
            raise TowerConfigError("q must be a tau-delta-scalar")
        for r in coeff.spanning_set():
            lhs = coeff.delta(coeff.tau(r))
            rhs = coeff.mul(qs, coeff.tau(coeff.delta(r)))
            if not coeff.eq(lhs, rhs):
                raise TowerConfigError(
                    f"delta tau = q tau delta fails at {coeff.format(r)} for q = {q}")
    qi = k.inverse(q)

    def tau(f):
        return _termwise(f, lambda j, c: coeff.mul(coeff.scalar(k.pow(q, j)), coeff.tau(c)))

    def tau_inv(f):
        return _termwise(f, lambda j, c: coeff.mul(coeff.scalar(k.pow(qi, j)), coeff.tau_inv(c)))

    return SkewPair(tau=tau, tau_inv=tau_inv, delta=None)


# ---------------------------------------------------------------------------
# declarative specs


@dataclass
class LevelSpec:
    kind: str
    q: Any = "1"
    d: Any = "1"

    def to_json(self):
        if self.kind == "weyl":
            return {"kind": "weyl", "q": str(self.q), "d": str(self.d)}
        return {"kind": self.kind, "q": str(self.q)}

    @classmethod
    def from_json(cls, obj):
        if not isinstance(obj, dict) or "kind" not in obj:
            raise TowerConfigError(f"level must be an object with a 'kind': {obj!r}")
        kind = obj["kind"]
        if kind not in ("weyl", "delta0"):
            raise TowerConfigError(f"unknown level kind {kind!r}")
        extra = set(obj) - {"kind", "q", "d"}
        if extra:
            raise TowerConfigError(f"unknown level keys {sorted(extra)}")
        if kind == "delta0" and "d" in obj:
            raise TowerConfigError("delta0 levels take no 'd'")
        return cls(kind, str(obj.get("q", "1")), str(obj.get("d", "1")))


@dataclass
class CustomLevel:
    """A level given by explicit maps (Python only); validated like the rest."""

    tau: Callable
    tau_inv: Callable
    delta: Optional[Callable] = None
    kind: str = "custom"


@dataclass
class TowerSpec:
    base: str = "QQ"
    precision: int = 6
    levels: list = field(default_factory=list)

    def to_json(self):
        return {"base": self.base, "precision": self.precision,
                "levels": [lv.to_json() for lv in self.levels if isinstance(lv, LevelSpec)]}

    @classmethod
    def from_json(cls, obj):
        if not isinstance(obj, dict):
            raise TowerConfigError("tower config must be a JSON object")
        extra = set(obj) - {"base", "precision", "levels"}
        if extra:
            raise TowerConfigError(f"unknown tower keys {sorted(extra)}")
        levels = obj.get("levels")
        if not isinstance(levels, list) or not levels:
            raise TowerConfigError("'levels' must be a non-empty list")
        prec = obj.get("precision", 6)
        if not isinstance(prec, int) or isinstance(prec, bool):
            raise TowerConfigError("'precision' must be an integer")
        return cls(str(obj.get("base", "QQ")), prec, [LevelSpec.from_json(lv) for lv in levels])

    @classmethod
    def load(cls, path):
        with open(path, encoding="utf-8") as fh:
            return cls.from_json(json.load(fh))


@dataclass
class Level:
    """One built level: its variable, the coefficient ring carrying the pair, the ring."""

    name: str
    kind: str
    coeff: Ring
    ring: SeriesRing
    q: Any = None
    d: Any = None


class Tower:
    def __init__(self, spec, base, levels):
        self.spec = spec
        self.base = base
        self.levels = levels
        self.N = spec.precision

    @property
    def ring(self):
        return self.levels[-1].ring

    @property
    def names(self):
        return [lv.name for lv in self.levels]

    def level_index(self, name):
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"no tower variable {name!r}; have {self.names}") from None

    def lift(self, r, from_level):
        """Embed an element of level ``from_level`` (-1 = base) into the top ring."""
        for lv in self.levels[from_level + 1:]:
            r = lv.ring.embed(r)
        return r

    def var(self, name):
        i = self.level_index(name)
        return self.lift(self.levels[i].ring.gen(), i)

    def scalar(self, c):
        return self.ring.scalar(c)

    def constant_scalar(self, f):
        """The base-field constant term of a nested element."""
        for _ in self.levels:
            f = f.coeff(0)
        return f

    def __repr__(self):
        return f"Tower<{self.ring.id}>"


def _check_degree_raising(ring, delta):
    for m in ring.spanning_set():
        i = m.valuation
        out = ser.to_right_form(delta(m))
        if not out.is_zero() and out.valuation < i + 1:
            return m
    return None


def _identity(ring):
    return WithSkew(ring, name=ring.id, has_delta=False)


def build_tower(spec, validate_samples=100, seed=0):
    """Build and validate a tower; raises TowerConfigError with a witness."""
    if isinstance(spec, dict):
        spec = TowerSpec.from_json(spec)
    try:
        N = check_precision(spec.precision)
    except ValueError as exc:
        raise TowerConfigError(str(exc)) from None
    try:
        base = ring_from_id(spec.base)
    except ValueError as exc:
        raise TowerConfigError(str(exc)) from None
    if not isinstance(base, (RationalField, PrimeField, TruncPolyRing)):
        raise TowerConfigError("tower base must be a field or a poly_trunc ring")
    if not spec.levels:
        raise TowerConfigError("a tower needs at least one level")
    k = base.field
    levels = []
    current = base
    counts = {}

    def fresh(stem):
        counts[stem] = counts.get(stem, 0) + 1
        return stem if counts[stem] == 1 else f"{stem}{counts[stem]}"

    def scalar(x, what):
        try:
            return k.scalar(to_qq(x))
        except (ValueError, TypeError) as exc:
            raise TowerConfigError(f"bad {what} {x!r}: {exc}") from None

    def add_level(name, kind, coeff, q=None, d=None):
        ring = SeriesRing(coeff, N, var=name, name=f"{coeff.id}[[{name}]]")
        levels.append(Level(name, kind, coeff, ring, q, d))
        return ring

    def validate(ring_with_pair, what):
        rep = validate_skew_derivation(ring_with_pair, sample_count=validate_samples, seed=seed)
        if not rep.passed:
            bad = rep.failures()[0]
            raise TowerConfigError(f"{what}: skew-derivation law {bad.name} fails")

    for idx, lv in enumerate(spec.levels):
        if isinstance(lv, CustomLevel):
            if idx == 0 or not levels:
                raise TowerConfigError("the first level must have identity tau and zero delta")
            coeff = WithSkew(current, lv.tau, lv.tau_inv, lv.delta, name=current.id,
                             has_delta=lv.delta is not None)
            if lv.delta is not None:
                bad = _check_degree_raising(current, lv.delta)
                if bad is not None:
                    raise TowerConfigError(
                        f"series-level derivation is not degree-raising at {current.format(bad)}")
            validate(coeff, "custom level")
            current = add_level(fresh("zc"), "custom", coeff)
            continue
        if lv.kind == "weyl":
            q = scalar(lv.q, "q")
            d = scalar(lv.d, "d")
            if k.is_zero(q):
                raise TowerConfigError("q must be a unit")
            xname, yname = fresh("zx"), fresh("zy")
            xring = add_level(xname, "weyl-x", _identity(current))
            pair = weyl_pair(q, d)
            coeff = WithSkew(xring, pair.tau, pair.tau_inv, pair.delta, name=xring.id, has_delta=not k.is_zero(d))
            bad = _check_degree_raising(xring, pair.delta)
            if bad is not None:
                raise TowerConfigError("D is not degree-raising")
            validate(coeff, f"weyl level (q={lv.q}, d={lv.d})")
            current = add_level(yname, "weyl-y", coeff, q, d)
        elif lv.kind == "delta0":
            q = scalar(lv.q, "q")
            if k.is_zero(q):
                raise TowerConfigError("q must be a unit")
            if not levels:
                if q != k.one:
                    raise TowerConfigError(
                        "the first level has identity tau, so its q must be 1")
                coeff = _identity(current)
            else:
                prev = levels[-1]
                pair = extend_tau_q(prev.coeff, q)
                coeff = WithSkew(current, pair.tau, pair.tau_inv, None, name=current.id, has_delta=False)
                validate(coeff, f"delta0 level (q={lv.q})")
            current = add_level(fresh("zd"), "delta0", coeff, q)
        else:
            raise TowerConfigError(f"unknown level kind {lv.kind!r}")
    return Tower(spec, base, levels)


def weyl_tower(q=1, d=1, N=6, base="QQ", validate_samples=50):
    spec = TowerSpec(base, N, [LevelSpec("weyl", str(q), str(d))])
    return build_tower(spec, validate_samples=validate_samples)


# ---------------------------------------------------------------------------
# checks


def _d_of_x_powers(xl, q, d, count):
    """D(x^i) for i = 1..count, by the Leibniz rule from D on z_x alone.

    D(x) = -sigma(x) D(z_x) x follows from x z_x = 1 and D(1) = 0; then
    D(x^i) = sigma(x) D(x^{i-1}) + D(x) x^{i-1}.
    """
    R = xl
    zx = R.gen(1)
    x = lau.laurent_invert(zx)
    sig_x = lau.laurent_invert(lift_sigma(zx, q))
    Dz = lau.from_series(lift_D(zx.body, q, d))
    Dx = R.neg(R.mul(R.mul(sig_x, Dz), x))
    out = [Dx]
    xp = x
    for _ in range(2, count + 1):
        out.append(R.add(R.mul(sig_x, out[-1]), R.mul(Dx, xp)))
        xp = R.mul(xp, x)
    return x, out


def _enc(x):
    return x.to_json() if hasattr(x, "to_json") else x


def weyl_commutation_check(q=1, d=1, N=8, oracle_N=6, powers=6, seed=0):
    """z_x z_y against the one-step rule, closed forms, Laurent relations and the oracle."""
    qq, dd = to_qq(q), to_qq(d)
    tower = weyl_tower(q, d, N)
    k = tower.base.field
    qk, dk = k.scalar(qq), k.scalar(dd)
    xlev, ylev = tower.levels
    rep = Report("weyl-commutation", anchor="YX = qXY + d on inverse series; z_x z_y = sum z_y^i sigma D^(i-1)(z_x)",
                 params={"q": str(qq), "d": str(dd), "precision": N, "oracle_precision": oracle_N},
                 seed=seed)
    Y = ylev.coeff
    zx = xlev.ring.gen()
    ZX, ZY = ser.constant(Y, zx, N), ser.z_power(Y, 1, N)
    lhs = ser.mul(ZX, ZY)

    terms = {}
    Dk = zx
    for i in range(1, N):
        terms[i] = lift_sigma(Dk, qk)
        Dk = lift_D(Dk, qk, dk)
    rule = ser.series(Y, terms, N)
    rep.expect("one_step_rule_expansion", lhs == rule, lambda: {"lhs": lhs.to_json(), "rule": rule.to_json()})

    if qq == 1 and dd == 1:
        fact = 1
        closed = {}
        for i in range(1, N):
            closed[i] = ser.z_power(xlev.coeff, i, N, k.scalar((-1) ** (i - 1) * fact))
            fact *= i
        expect = ser.series(Y, closed, N)
        rep.expect("factorial_closed_form", lhs == expect, lambda: lhs.to_json())
    if dd == 0:
        expect = ser.z_power(Y, 1, N, lift_sigma(zx, qk))
        rep.expect("d_zero_q_commutation", lhs == expect, lambda: lhs.to_json())

    # Laurent side over X-Laurent coefficients
    # extra room: each factor x = z_x^{-1} costs one order of absolute precision
    xl = LaurentRing(_identity(tower.base), N + 2 * powers + 2, var="zx", min_exponent=-powers - 1)
    lpair = weyl_pair(qk, dk)
    YL = WithSkew(xl, lpair.tau, lpair.tau_inv, lpair.delta, name=xl.id, has_delta=not k.is_zero(dk))
    x, dpows = _d_of_x_powers(xl, qk, dk, powers)
    P = N
    y = lau.laurent_z_power(YL, -1, P)
    xs = lau.laurent_constant(YL, x, P)
    rel = lau.laurent_add(lau.laurent_mul(y, xs), lau.laurent_negate(
        lau.laurent_mul(lau.laurent_constant(YL, xl.scalar(qq), P), lau.laurent_mul(xs, y))))
    d_el = lau.laurent_constant(YL, xl.scalar(dd), P)
    rep.expect("laurent_relation_yx_minus_qxy_equals_d", rel == d_el, lambda: rel.format())

    xp = xl.one
    for i in range(1, powers + 1):
        expect = xl.mul(xl.scalar(k.mul(dk, qint(i, qk, k))), xp)
        got = dpows[i - 1]
        rep.expect("D_of_x_powers", xl.eq(got, expect),
                   lambda: {"i": i, "got": got.format(), "expected": expect.format()})
        termwise = lift_D(xl.mul(xp, x), qk, dk)
        rep.expect("D_of_x_powers_termwise", xl.eq(termwise, expect),
                   lambda: {"i": i, "got": termwise.format()})
        xp = xl.mul(xp, x)

    from skewps.oracle import oracle_compare

    small = weyl_tower(q, d, oracle_N)
    sY = small.levels[1].coeff
    f = ser.constant(sY, small.levels[0].ring.gen(), oracle_N)
    g = ser.z_power(sY, 1, oracle_N)
    orep = oracle_compare(f, g, tower=small)
    rep.expect("oracle_agreement", orep.passed, lambda: orep.to_dict())
    return rep


def _sample_nested(tower, rng, constant=None):
    f = tower.ring.sample(rng)
    if constant is None:
        return f
    # replace the base-field constant term
    c_now = tower.constant_scalar(f)
    k = tower.base
    diff = k.sub(constant, c_now)
    return tower.ring.add(f, tower.lift(diff, -1))


def tower_unit_check(tower, samples=200, seed=0):
    """Elements outside n = <z_1, ..., z_m> invert two-sidedly; elements of n do not."""
    if not isinstance(tower.base, (RationalField, PrimeField)):
        raise TowerConfigError("unit checks need a field as base")
    rng = random.Random(seed)
    A = tower.ring
    k = tower.base
    rep = Report("tower-units", anchor="an element of the tower outside n is a unit",
                 params={"tower": tower.spec.to_json(), "samples": samples}, seed=seed)

    def two_sided(f):
        try:
            g = A.inverse(f)
        except NotUnit:
            return False
        return A.eq(A.mul(f, g), A.one) and A.eq(A.mul(g, f), A.one)

    names = tower.names
    prod = A.one
    for nm in names[-2:]:
        prod = A.mul(prod, tower.var(nm))
    fixed = A.add(A.one, prod)
    rep.expect("one_plus_product_of_variables_is_unit", two_sided(fixed), lambda: A.encode(fixed))
    rep.expect("variable_is_not_unit", not A.is_unit(tower.var(names[0])))
    c = k.scalar(3)
    inv = A.inverse(A.scalar(3)) if A.is_unit(A.scalar(3)) else None
    rep.expect("scalar_inverse", inv is not None and A.eq(inv, tower.lift(k.inverse(c), -1)))

    for _ in range(samples):
        c = k.zero
        while k.is_zero(c):
            c = k.sample(rng)
        f = _sample_nested(tower, rng, c)
        rep.expect("outside_n_inverts_two_sided", two_sided(f), lambda: A.encode(f))
        g = _sample_nested(tower, rng, k.zero)
        rep.expect("inside_n_not_unit", not A.is_unit(g), lambda: A.encode(g))
    return rep


def in_z_ideal(tower, a, j, level=None, side="left"):
    """Is ``a`` (an element of level ``level``) in z_j R (side='left') or R z_j?"""
    level = len(tower.levels) - 1 if level is None else level
    if j == level:
        f = ser.to_left_form(a) if side == "right" else ser.to_right_form(a)
        return f.is_zero() or f.valuation >= 1
    f = ser.to_left_form(a) if side == "left" else ser.to_right_form(a)
    return all(in_z_ideal(tower, c, j, level - 1, side) for c in f.coeffs)


def normalizing_check(tower, samples=100, seed=0):
    """z_j A = A z_j at truncation: f z_j lies in z_j A and z_j f in A z_j."""
    rng = random.Random(seed)
    A = tower.ring
    rep = Report("normalizing-generators", anchor="n has a normalizing family of generators",
                 params={"tower": tower.spec.to_json(), "samples": samples}, seed=seed)
    for j, name in enumerate(tower.names):
        zj = tower.var(name)
        for _ in range(samples):
            f = A.sample(rng)
            right = A.mul(f, zj)
            rep.expect(f"{name}: f*{name} in {name}*A", in_z_ideal(tower, right, j, side="left"),
                       lambda: A.encode(f))
            left = A.mul(zj, f)
            rep.expect(f"{name}: {name}*f in A*{name}", in_z_ideal(tower, left, j, side="right"),
                       lambda: A.encode(f))
    return rep
