"""Truncated arithmetic in S = R[[z; tau, delta]], z = y^{-1}.

A :class:`SkewSeries` is known modulo z^N. Right form stores ``sum z^i r_i``
and is the only form arithmetic works in; left form ``sum r_i z^i`` exists as
a conversion target. Everything is driven by the one-step commutation rule

    r z = sum_{i>=1} z^i tau delta^{i-1}(r)

and, for left coefficients,

    z r = sum_{i>=1} tau^{-1} (-delta tau^{-1})^{i-1}(r) z^i.

Precision calculus: a product is known modulo
``z^min(N_f + v_g, N_g + v_f)``, a sum modulo ``z^min(N_f, N_g)``, both capped
by :func:`skewps.config.max_precision`.
"""

from dataclasses import dataclass
from typing import Any

from skewps.config import max_precision
from skewps.rings import NotUnit, Ring

__all__ = [
    "RIGHT", "LEFT", "SkewSeries", "InitialData", "DegeneratePrecision",
    "ZeroToPrecision", "series", "zero", "one", "constant", "z_power",
    "commute_right", "commute_left", "mul", "add", "negate", "sub",
    "to_left_form", "to_right_form", "invert", "is_unit", "initial_data",
    "gr_leading_check", "truncate", "scale_right", "tau_power", "sample_series",
]

RIGHT = "right"
LEFT = "left"


class DegeneratePrecision(ValueError):
    """The result would be known modulo z^0, i.e. not at all."""


class ZeroToPrecision(ValueError):
    """The series vanishes to its precision, so it has no initial term."""


@dataclass(frozen=True, eq=False)
class SkewSeries:
    """``sum z^i r_i`` (right side) or ``sum r_i z^i`` (left side) mod z^precision.

    ``coeffs[k]`` is the coefficient of z^(valuation + k). The zero-to-precision
    element has ``valuation == precision`` and no coefficients.
    """

    ring: Ring
    valuation: int
    coeffs: tuple
    precision: int
    side: str = RIGHT

    @classmethod
    def from_dense(cls, ring, dense, precision, side=RIGHT):
        """Build from coefficients of z^0, z^1, ... (extra entries are dropped)."""
        n = min(len(dense), precision)
        v = 0
        while v < n and ring.is_zero(dense[v]):
            v += 1
        if v == n:
            return cls(ring, precision, (), precision, side)
        return cls(ring, v, tuple(dense[v:n]), precision, side)

    def coeff(self, i):
        if i < 0:
            raise IndexError("negative exponent")
        if i >= self.precision:
            raise IndexError(f"coefficient {i} is beyond precision {self.precision}")
        k = i - self.valuation
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return self.ring.zero

    def dense(self, length=None):
        length = self.precision if length is None else length
        R = self.ring
        out = [R.zero] * length
        for k, c in enumerate(self.coeffs):
            i = self.valuation + k
            if i >= length:
                break
            out[i] = c
        return out

    def is_zero(self):
        return self.valuation >= self.precision

    def terms(self):
        """Nonzero (exponent, coefficient) pairs."""
        R = self.ring
        return [(self.valuation + k, c) for k, c in enumerate(self.coeffs) if not R.is_zero(c)]

    def __eq__(self, other):
        if not isinstance(other, SkewSeries):
            return NotImplemented
        a, b = to_right_form(self), to_right_form(other)
        n = min(a.precision, b.precision)
        R = self.ring
        return all(R.eq(a.coeff(i), b.coeff(i)) for i in range(n))

    __hash__ = None

    def strict_eq(self, other):
        return self.precision == other.precision and self.side == other.side and self == other

    def __add__(self, other):
        return add(self, _coerce(self, other))

    def __radd__(self, other):
        return add(_coerce(self, other), self)

    def __neg__(self):
        return negate(self)

    def __sub__(self, other):
        return sub(self, _coerce(self, other))

    def __rsub__(self, other):
        return sub(_coerce(self, other), self)

    def __mul__(self, other):
        return mul(self, _coerce(self, other))

    def __rmul__(self, other):
        return mul(_coerce(self, other), self)

    def __pow__(self, n):
        if n < 0:
            return invert(self) ** (-n)
        result = one(self.ring, self.precision)
        for _ in range(n):
            result = mul(result, self)
        return result

    def format(self, with_order=True):
        R = self.ring
        parts = []
        for i, c in self.terms():
            zs = "" if i == 0 else ("z" if i == 1 else f"z^{i}")
            cs = R.format(c)
            if not zs:
                parts.append(f"({cs})")
            elif self.side == RIGHT:
                parts.append(f"{zs}*({cs})")
            else:
                parts.append(f"({cs})*{zs}")
        if with_order:
            parts.append(f"O(z^{self.precision})")
        return " + ".join(parts) if parts else "0"

    def __repr__(self):
        return f"SkewSeries<{self.ring.id}, {self.side}>[{self.format()}]"

    def to_json(self):
        return {
            "side": self.side,
            "valuation": self.valuation,
            "precision": self.precision,
            "coeffs": [self.ring.encode(c) for c in self._trimmed()],
        }

    def _trimmed(self):
        cs = list(self.coeffs)
        while cs and self.ring.is_zero(cs[-1]):
            cs.pop()
        return cs

    @classmethod
    def from_json(cls, ring, obj):
        v = int(obj["valuation"])
        coeffs = [ring.decode(c) for c in obj["coeffs"]]
        dense = [ring.zero] * v + coeffs
        return cls.from_dense(ring, dense, int(obj["precision"]), obj.get("side", RIGHT))


def _coerce(f, x):
    if isinstance(x, SkewSeries):
        return x
    if isinstance(x, int):
        x = f.ring.scalar(x)
    return constant(f.ring, x, f.precision)


def _cap(n):
    return min(n, max_precision())


def series(ring, terms, precision, side=RIGHT):
    """Series from ``{exponent: coefficient}``."""
    dense = [ring.zero] * precision
    for i, c in terms.items():
        if 0 <= i < precision:
            dense[i] = ring.add(dense[i], c)
        elif i < 0:
            raise ValueError("negative exponent in a power series")
    return SkewSeries.from_dense(ring, dense, precision, side)


def zero(ring, precision):
    return SkewSeries(ring, precision, (), precision, RIGHT)


def constant(ring, r, precision):
    return SkewSeries.from_dense(ring, [r], precision)


def one(ring, precision):
    return constant(ring, ring.one, precision)


def z_power(ring, k, precision, coeff=None):
    """``z^k * coeff`` (coefficient on the right)."""
    return series(ring, {k: ring.one if coeff is None else coeff}, precision)


def truncate(f, n):
    if n >= f.precision:
        return f
    return SkewSeries.from_dense(f.ring, f.dense(n), n, f.side)


# ---------------------------------------------------------------------------
# dense kernels (absolute indices, lists of length P)


def _times_z(R, h, P):
    """(sum z^i h_i) * z, truncated at z^P, by the one-step rule.

    The z^j coefficient is sum_{i<j} tau delta^(j-1-i)(h_i). Since tau and
    delta are additive, one running value v_j = delta(v_{j-1}) + h_{j-1}
    gives it as tau(v_j), so a step costs O(P) ring operations.
    """
    out = [R.zero] * P
    n = min(len(h), P - 1)
    if not R.has_delta:
        for i in range(n):
            c = h[i]
            if not R.is_zero(c):
                out[i + 1] = R.tau(c)
        return out
    v = R.zero
    for j in range(1, P):
        if not R.is_zero(v):
            v = R.delta(v)
        if j - 1 < n:
            v = R.add(v, h[j - 1])
        if not R.is_zero(v):
            out[j] = R.tau(v)
    return out


def _z_times_left(R, h, P):
    """z * (sum h_j z^j) for left coefficients, truncated at z^P.

    Same running-sum trick as :func:`_times_z`: with
    w_i = -delta tau^-1(w_{i-1}) + h_{i-1}, the z^i coefficient is tau^-1(w_i).
    """
    out = [R.zero] * P
    n = min(len(h), P - 1)
    if not R.has_delta:
        for j in range(n):
            c = h[j]
            if not R.is_zero(c):
                out[j + 1] = R.tau_inv(c)
        return out
    w = R.zero
    u = R.zero
    for i in range(1, P):
        w = R.neg(R.delta(u)) if not R.is_zero(u) else R.zero
        if i - 1 < n:
            w = R.add(w, h[i - 1])
        u = R.tau_inv(w)
        out[i] = u
    return out


def _mul_right_scalar(R, h, s, acc, start):
    for i in range(start, len(acc)):
        c = h[i]
        if not R.is_zero(c):
            acc[i] = R.add(acc[i], R.mul(c, s))


# ---------------------------------------------------------------------------
# operations


def commute_right(r, b, precision, ring):
    """Right form of ``r * z^b`` by b-fold use of the one-step rule."""
    if b < 1 or precision < 1:
        raise ValueError("need b >= 1 and precision >= 1")
    P = _cap(precision)
    h = [r] + [ring.zero] * (P - 1)
    for _ in range(b):
        h = _times_z(ring, h, P)
    return SkewSeries.from_dense(ring, h, P)


def commute_left(r, precision, ring):
    """Left form of ``z * r``: coefficient tau^{-1}(-delta tau^{-1})^{i-1}(r) at z^i."""
    if precision < 1:
        raise ValueError("precision must be >= 1")
    P = _cap(precision)
    h = _z_times_left(ring, [r], P)
    return SkewSeries.from_dense(ring, h, P, LEFT)


def to_left_form(f):
    if f.side == LEFT:
        return f
    R, P = f.ring, f.precision
    if f.is_zero():
        return SkewSeries(R, P, (), P, LEFT)
    d = f.dense()
    # Horner: r_0 + z (r_1 + z (r_2 + ...))
    acc = [R.zero] * P
    for i in range(P - 1, f.valuation - 1, -1):
        acc = _z_times_left(R, acc, P) if i < P - 1 else acc
        acc[0] = R.add(acc[0], d[i])
    # the loop above leaves z^valuation unapplied
    for _ in range(f.valuation):
        acc = _z_times_left(R, acc, P)
    return SkewSeries.from_dense(R, acc, P, LEFT)


def to_right_form(f):
    if f.side == RIGHT:
        return f
    R, P = f.ring, f.precision
    if f.is_zero():
        return SkewSeries(R, P, (), P, RIGHT)
    d = f.dense()
    # Horner: c_0 + (c_1 + (c_2 + ...) z) z
    acc = [R.zero] * P
    for j in range(P - 1, f.valuation - 1, -1):
        acc = _times_z(R, acc, P) if j < P - 1 else acc
        acc[0] = R.add(acc[0], d[j])
    for _ in range(f.valuation):
        acc = _times_z(R, acc, P)
    return SkewSeries.from_dense(R, acc, P, RIGHT)


def _same_ring(f, g):
    if f.ring is not g.ring:
        raise TypeError(f"ring mismatch: {f.ring.id} vs {g.ring.id}")


def add(f, g):
    _same_ring(f, g)
    f, g = to_right_form(f), to_right_form(g)
    P = min(f.precision, g.precision)
    R = f.ring
    a, b = f.dense(P), g.dense(P)
    return SkewSeries.from_dense(R, [R.add(x, y) for x, y in zip(a, b)], P)


def negate(f):
    R = f.ring
    return SkewSeries(R, f.valuation, tuple(R.neg(c) for c in f.coeffs), f.precision, f.side)


def sub(f, g):
    return add(f, negate(g))


def scale_right(f, s):
    """``f * s`` for a ring element s (right coefficients multiply directly)."""
    f = to_right_form(f)
    R = f.ring
    return SkewSeries.from_dense(R, [R.mul(c, s) for c in f.dense()], f.precision)


def mul(f, g):
    """Product in S, expanding each r_a z^b with the one-step rule."""
    _same_ring(f, g)
    f, g = to_right_form(f), to_right_form(g)
    R = f.ring
    P = _cap(min(f.precision + g.valuation, g.precision + f.valuation))
    if P <= 0:
        raise DegeneratePrecision("product would be known modulo z^0")
    if f.is_zero() or g.is_zero():
        return zero(R, P)
    vf, vg = f.valuation, g.valuation
    h = f.dense(P)
    for _ in range(vg):
        h = _times_z(R, h, P)
    acc = [R.zero] * P
    last = P - vf  # g-exponents at or beyond this only reach z^P and above
    gd = g.dense(min(g.precision, last))
    for b in range(vg, last):
        s = gd[b]
        if not R.is_zero(s):
            _mul_right_scalar(R, h, s, acc, b + vf)
        if b + 1 < last:
            h = _times_z(R, h, P)
    return SkewSeries.from_dense(R, acc, P)


def tau_power(R, r, n):
    for _ in range(n):
        r = R.tau(r)
    return r


def invert(f):
    """Two-sided inverse mod z^N when the constant coefficient is a unit.

    Solves f g = 1 coefficient by coefficient: with F_n = f z^n (whose
    lowest term is z^n tau^n(r_0)), the z^n coefficient of g is
    tau^n(r_0^{-1}) times the negated residual.
    """
    f = to_right_form(f)
    R, P = f.ring, f.precision
    if P <= 0:
        raise DegeneratePrecision("cannot invert a series known modulo z^0")
    if f.valuation > 0:
        raise NotUnit("constant coefficient is 0")
    r0_inv = R.inverse(f.coeffs[0])
    acc = [R.zero] * P
    g = [R.zero] * P
    h = f.dense(P)
    u = r0_inv
    for n in range(P):
        target = R.one if n == 0 else R.zero
        s = R.mul(u, R.sub(target, acc[n]))
        g[n] = s
        if not R.is_zero(s):
            _mul_right_scalar(R, h, s, acc, n)
        if n + 1 < P:
            h = _times_z(R, h, P)
            u = R.tau(u)
    return SkewSeries.from_dense(R, g, P)


def is_unit(f):
    """True iff the constant coefficient is a unit of R."""
    f = to_right_form(f)
    if f.precision == 0 or f.valuation > 0:
        return False
    return f.ring.is_unit(f.coeffs[0])


@dataclass(frozen=True)
class InitialData:
    valuation: int
    initial_right: Any
    initial_left: Any
    constant: Any


def initial_data(f):
    if f.is_zero():
        raise ZeroToPrecision("series is zero to its precision")
    r, l = to_right_form(f), to_left_form(f)
    R = f.ring
    const = r.coeffs[0] if r.valuation == 0 else R.zero
    return InitialData(r.valuation, r.coeffs[0], l.coeffs[0], const)


def gr_leading_check(f, g):
    """Leading-term law of gr(S) = R[x; tau^{-1}] for the product f g.

    Returns True/False, or None (inconclusive) when the predicted leading
    coefficient tau^{v_g}(init f) * init g vanishes in R.
    """
    f, g = to_right_form(f), to_right_form(g)
    if f.is_zero() or g.is_zero():
        raise ZeroToPrecision("leading terms need nonzero series")
    R = f.ring
    lead = R.mul(tau_power(R, f.coeffs[0], g.valuation), g.coeffs[0])
    if R.is_zero(lead):
        return None
    h = mul(f, g)
    if h.is_zero() or h.valuation != f.valuation + g.valuation:
        return False
    return R.eq(h.coeffs[0], lead)


def sample_series(ring, rng, precision, density=0.6, max_valuation=2, max_terms=None):
    """Seeded random right-form series; ``max_terms`` bounds the support."""
    v = rng.randint(0, min(max_valuation, precision - 1))
    idx = [i for i in range(v, precision) if i == v or rng.random() < density]
    if max_terms is not None and len(idx) > max_terms:
        idx = [v] + sorted(rng.sample(idx[1:], max_terms - 1))
    dense = [ring.zero] * precision
    for i in idx:
        dense[i] = ring.sample(rng)
    return SkewSeries.from_dense(ring, dense, precision)
