"""Ideals of the coefficient ring and the induced series ideals I<<z>>.

Only the shapes the checks need are implemented: the zero and unit ideals,
principal monomial ideals <t^j> of the polynomial rings (membership is "all
coefficients below degree j vanish"), and ideals of finite-dimensional rings
given by generators (membership by exact linear solve).
"""

import random
from dataclasses import dataclass

from skewps import series as ser
from skewps.linalg import rref, solve
from skewps.report import Report
from skewps.rings import NotUnit, PolyRing

__all__ = [
    "IdealSpec", "ZeroIdeal", "UnitIdeal", "MonomialIdeal", "SpanIdeal",
    "make_ideal", "check_tau_delta_ideal", "tau_delta_witness",
    "SeriesIdealSpec", "series_ideal_member", "sample_ideal_series",
    "check_IS_equals_ideal", "check_star_condition",
]


class IdealSpec:
    """A two-sided ideal of ``ring`` with decidable membership."""

    ring = None
    generators = ()
    name = "I"

    def contains(self, r):
        raise NotImplementedError

    def power(self, k):
        raise NotImplementedError

    def factor_right(self, b):
        """Coefficients r_k with b = sum r_k g_k, or None."""
        raise NotImplementedError

    def factor_left(self, b):
        """Coefficients r_k with b = sum g_k r_k, or None."""
        raise NotImplementedError

    def sample(self, rng):
        raise NotImplementedError

    def __repr__(self):
        return f"{type(self).__name__}<{self.ring.id}>({self.name})"


class ZeroIdeal(IdealSpec):
    def __init__(self, ring):
        self.ring = ring
        self.generators = ()
        self.name = "0"

    def contains(self, r):
        return self.ring.is_zero(r)

    def power(self, k):
        return UnitIdeal(self.ring) if k == 0 else self

    def factor_right(self, b):
        return [] if self.ring.is_zero(b) else None

    factor_left = factor_right

    def sample(self, rng):
        return self.ring.zero


class UnitIdeal(IdealSpec):
    def __init__(self, ring):
        self.ring = ring
        self.generators = (ring.one,)
        self.name = "1"

    def contains(self, r):
        return True

    def power(self, k):
        return self

    def factor_right(self, b):
        return [b]

    factor_left = factor_right

    def sample(self, rng):
        return self.ring.sample(rng)


class MonomialIdeal(IdealSpec):
    """<t^j> in a (possibly truncated) polynomial ring."""

    def __init__(self, ring, degree):
        if not isinstance(ring, PolyRing):
            raise TypeError("monomial ideals live in polynomial rings")
        if degree < 0:
            raise ValueError("negative degree")
        self.ring = ring
        self.degree = degree
        self.generators = (ring.monomial(degree),)
        self.name = "1" if degree == 0 else ("t" if degree == 1 else f"t^{degree}")

    def contains(self, r):
        return all(c == 0 for c in r[: self.degree])

    def power(self, k):
        return MonomialIdeal(self.ring, self.degree * k)

    def factor_right(self, b):
        # t^j is central in the commutative polynomial ring
        if not self.contains(b):
            return None
        return [self.ring._norm(list(b[self.degree:]))]

    factor_left = factor_right

    def sample(self, rng):
        return self.ring.mul(self.ring.sample(rng), self.generators[0])


class SpanIdeal(IdealSpec):
    """Two-sided ideal generated by ``generators`` in a finite-dimensional ring."""

    def __init__(self, ring, generators, name=None, _basis=None):
        self.ring = ring
        self.field = ring.field
        self.generators = tuple(generators)
        self.name = name or "<" + ", ".join(ring.format(g) for g in self.generators) + ">"
        if _basis is None:
            span = ring.spanning_set()
            rows = [ring.to_vector(ring.mul(ring.mul(a, g), b))
                    for g in self.generators for a in span for b in span]
            _basis, _ = rref(rows, self.field) if rows else ([], [])
        self.basis = [ring.from_vector(r) for r in _basis]
        self._rows = [list(r) for r in _basis]

    @property
    def dimension(self):
        return len(self.basis)

    def contains(self, r):
        v = self.ring.to_vector(r)
        if all(self.field.is_zero(x) for x in v):
            return True
        return bool(self._rows) and solve(self._rows, v, self.field) is not None

    def power(self, k):
        R = self.ring
        if k == 0:
            return UnitIdeal(R)
        current = list(self.basis)
        for _ in range(k - 1):
            rows = [R.to_vector(R.mul(a, b)) for a in current for b in self.basis]
            red, _ = rref(rows, self.field) if rows else ([], [])
            current = [R.from_vector(r) for r in red]
        return SpanIdeal(R, current, name=f"({self.name})^{k}",
                         _basis=[R.to_vector(b) for b in current])

    def _factor(self, b, left_gen):
        R = self.ring
        span = R.spanning_set()
        cols = []
        for g in self.generators:
            for s in span:
                cols.append(R.to_vector(R.mul(g, s) if left_gen else R.mul(s, g)))
        if not cols:
            return [] if R.is_zero(b) else None
        x = solve(cols, R.to_vector(b), self.field)
        if x is None:
            return None
        out = []
        n = len(span)
        for k in range(len(self.generators)):
            r = R.zero
            for i, s in enumerate(span):
                c = x[k * n + i]
                if not self.field.is_zero(c):
                    r = R.add(r, R.mul(R.scalar(c), s))
            out.append(r)
        return out

    def factor_right(self, b):
        return self._factor(b, left_gen=False)

    def factor_left(self, b):
        return self._factor(b, left_gen=True)

    def sample(self, rng):
        R = self.ring
        out = R.zero
        for b in self.basis:
            if rng.random() < 0.5:
                out = R.add(out, R.mul(R.scalar(rng.randint(-3, 3)), b))
        return out


def make_ideal(ring, generators):
    """Pick the membership procedure that fits ``ring`` and ``generators``."""
    gens = [g for g in generators if not ring.is_zero(g)]
    if not gens:
        return ZeroIdeal(ring)
    for g in gens:
        try:
            ring.inverse(g)
            return UnitIdeal(ring)
        except NotUnit:
            pass
    if isinstance(ring, PolyRing) and len(gens) == 1:
        g = gens[0]
        nz = [i for i, c in enumerate(g) if c != 0]
        if len(nz) == 1:
            return MonomialIdeal(ring, nz[0])
    if hasattr(ring, "to_vector"):
        try:
            ring.to_vector(ring.one)
            return SpanIdeal(ring, gens)
        except (AttributeError, NotImplementedError):
            pass
    raise ValueError(f"no membership procedure for this ideal of {ring.id}")


def tau_delta_witness(I, pair=None):
    """First (generator, map name) escaping I, or None."""
    pair = pair or I.ring.pair
    for g in I.generators:
        if not I.contains(pair.tau(g)):
            return (g, "tau")
        if not I.contains(pair.delta(g)):
            return (g, "delta")
    return None


def check_tau_delta_ideal(I, pair=None):
    """True iff tau(g) and delta(g) lie in I for every generator g."""
    return tau_delta_witness(I, pair) is None


@dataclass(frozen=True)
class SeriesIdealSpec:
    """I<<z>> = {sum z^i a_i : a_i in I} for a tau-delta-ideal I."""

    base: IdealSpec

    def __post_init__(self):
        w = tau_delta_witness(self.base)
        if w is not None:
            g, which = w
            raise ValueError(
                f"{self.base.name} is not a tau-delta-ideal: {which}({self.base.ring.format(g)}) escapes")

    @property
    def ring(self):
        return self.base.ring


def series_ideal_member(f, spec):
    base = spec.base if isinstance(spec, SeriesIdealSpec) else spec
    f = ser.to_right_form(f)
    return all(base.contains(c) for c in f.coeffs)


def sample_ideal_series(I, rng, precision, density=0.6):
    R = I.ring
    dense = [I.sample(rng) if rng.random() < density else R.zero for _ in range(precision)]
    return ser.SkewSeries.from_dense(R, dense, precision)


def _enc(f):
    return f.to_json()


def check_IS_equals_ideal(spec, N=8, samples=100, seed=0):
    """Sampled check that I<<z>> = IS = SI at truncation N."""
    if not isinstance(spec, SeriesIdealSpec):
        spec = SeriesIdealSpec(spec)
    I = spec.base
    R = I.ring
    rng = random.Random(seed)
    rep = Report("prop2.7", anchor="I<<z>> = IS = SI for a tau-delta-ideal I",
                 params={"ring": R.id, "ideal": I.name, "precision": N, "samples": samples},
                 seed=seed)
    gens = list(I.generators)

    for _ in range(samples):
        # (a) two-sided multiples of ideal elements stay in I<<z>>
        total = ser.zero(R, N)
        for _k in range(rng.randint(1, 2)):
            g = ser.constant(R, I.sample(rng), N)
            s = ser.sample_series(R, rng, N, max_terms=4)
            s2 = ser.sample_series(R, rng, N, max_terms=4)
            total = ser.add(total, ser.mul(ser.mul(s, g), s2))
        rep.expect("SIS_in_ideal_series", series_ideal_member(total, spec), lambda: _enc(total))
        left = ser.to_left_form(total)
        rep.expect("left_coefficients_in_I", all(I.contains(c) for c in left.coeffs),
                   lambda: _enc(left))

        # (b) I<<z>> inside SI and IS by factoring coefficients over the generators
        f = sample_ideal_series(I, rng, N)
        parts = [[R.zero] * N for _ in gens]
        ok = True
        for i, b in enumerate(f.dense()):
            rs = I.factor_right(b)
            if rs is None:
                ok = False
                break
            for k, r in enumerate(rs):
                parts[k][i] = r
        if ok:
            acc = ser.zero(R, N)
            for k, g in enumerate(gens):
                Fk = ser.SkewSeries.from_dense(R, parts[k], N)
                acc = ser.add(acc, ser.mul(Fk, ser.constant(R, g, N)))
            ok = acc == f
        rep.expect("ideal_series_in_SI", ok, lambda: _enc(f))

        lf = ser.to_left_form(f)
        parts = [[R.zero] * N for _ in gens]
        ok = True
        for i, b in enumerate(lf.dense()):
            rs = I.factor_left(b)
            if rs is None:
                ok = False
                break
            for k, r in enumerate(rs):
                parts[k][i] = r
        if ok:
            acc = ser.zero(R, N)
            for k, g in enumerate(gens):
                Gk = ser.to_right_form(ser.SkewSeries.from_dense(R, parts[k], N, side=ser.LEFT))
                acc = ser.add(acc, ser.mul(ser.constant(R, g, N), Gk))
            ok = acc == f
        rep.expect("ideal_series_in_IS", ok, lambda: _enc(f))

        # (c) contraction to R: constants are members exactly when they lie in I
        c = I.sample(rng) if rng.random() < 0.5 else R.sample(rng)
        member = series_ideal_member(ser.constant(R, c, N), spec)
        rep.expect("contraction", member == I.contains(c), lambda: R.encode(c))
        rep.expect("constant_of_members_in_I", I.contains(total.coeff(0)), lambda: _enc(total))
    return rep


def _star_factor(I, rng, N):
    R = I.ring
    kind = rng.choice(("z", "ideal", "mixed"))
    if kind == "z":
        return kind, ser.z_power(R, 1, N)
    a = ser.constant(R, I.sample(rng), N)
    if kind == "ideal":
        return kind, a
    s = ser.sample_series(R, rng, N, max_terms=3)
    return kind, ser.add(a, ser.mul(ser.z_power(R, 1, N), s))


def check_star_condition(I, t, samples=100, seed=0, N=None):
    """Coefficient j of sampled elements of J^t, J = I + <z>, lies in I^(t-j).

    Sampling only exercises the necessary direction of the condition.
    """
    if t < 1:
        raise ValueError("t must be at least 1")
    R = I.ring
    N = N or max(8, t + 2)
    rng = random.Random(seed)
    powers = [I.power(t - j) for j in range(t)]
    rep = Report("star", anchor="coefficient j of J^t lies in I^(t-j), J = I + <z>",
                 params={"ring": R.id, "ideal": I.name, "t": t, "precision": N,
                         "samples": samples, "direction": "necessary condition, sampled"},
                 seed=seed)
    for n in range(samples):
        prod = ser.one(R, N)
        kinds = []
        for _ in range(t):
            if n == 0:
                kind, j = "z", ser.z_power(R, 1, N)
            else:
                kind, j = _star_factor(I, rng, N)
            kinds.append(kind)
            if n and rng.random() < 0.5:
                prod = ser.mul(prod, ser.sample_series(R, rng, N, max_terms=3))
            prod = ser.mul(prod, j)
        if n and rng.random() < 0.5:
            prod = ser.mul(prod, ser.sample_series(R, rng, N, max_terms=3))
        for j in range(t):
            c = prod.coeff(j)
            rep.expect(f"coeff_{j}_in_I^{t - j}", powers[j].contains(c),
                       lambda: {"product": _enc(prod), "factors": kinds})
        if all(k == "z" for k in kinds):
            rep.expect("pure_z_products_vanish_below_t",
                       all(R.is_zero(prod.coeff(j)) for j in range(t)), lambda: _enc(prod))
    return rep
