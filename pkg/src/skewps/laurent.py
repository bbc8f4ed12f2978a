"""The localization S' = R((z; tau, delta)) of S at the powers of z.

An element is ``z^{-shift} * body`` with ``body`` a right-form power series.
Negative powers move past coefficients with the finite rule

    r z^{-1} = z^{-1} tau^{-1}(r) - delta tau^{-1}(r),

which is ``y r = tau(r) y + delta(r)`` rewritten for y = z^{-1}; no series
reversion is involved.
"""

from dataclasses import dataclass

from skewps import series as ser
from skewps.rings import NotUnit
from skewps.series import DegeneratePrecision, SkewSeries

__all__ = [
    "SkewLaurentSeries", "laurent", "from_series", "laurent_z_power",
    "laurent_mul", "laurent_add", "laurent_negate", "laurent_invert",
    "laurent_constant", "move_past_zinv",
]


@dataclass(frozen=True, eq=False)
class SkewLaurentSeries:
    """``z^{-shift} * body``; canonical: shift >= 0 and minimal."""

    body: SkewSeries
    shift: int

    @property
    def ring(self):
        return self.body.ring

    @property
    def precision(self):
        """Absolute precision: known modulo z^precision (may be negative)."""
        return self.body.precision - self.shift

    @property
    def valuation(self):
        return self.body.valuation - self.shift

    def is_zero(self):
        return self.body.is_zero()

    def coeff(self, i):
        """Right coefficient of z^i (i may be negative)."""
        j = i + self.shift
        if j < 0:
            return self.ring.zero
        return self.body.coeff(j)

    def terms(self):
        return [(i - self.shift, c) for i, c in self.body.terms()]

    def __eq__(self, other):
        if isinstance(other, SkewSeries):
            other = from_series(other)
        if not isinstance(other, SkewLaurentSeries):
            return NotImplemented
        R = self.ring
        top = min(self.precision, other.precision)
        low = min(-self.shift, -other.shift)
        return all(R.eq(self.coeff(i), other.coeff(i)) for i in range(low, top))

    __hash__ = None

    def __add__(self, other):
        return laurent_add(self, _coerce(self, other))

    __radd__ = __add__

    def __neg__(self):
        return laurent_negate(self)

    def __sub__(self, other):
        return laurent_add(self, laurent_negate(_coerce(self, other)))

    def __rsub__(self, other):
        return laurent_add(_coerce(self, other), laurent_negate(self))

    def __mul__(self, other):
        return laurent_mul(self, _coerce(self, other))

    def __rmul__(self, other):
        return laurent_mul(_coerce(self, other), self)

    def format(self, with_order=True):
        R = self.ring
        parts = []
        for i, c in self.terms():
            zs = "" if i == 0 else ("z" if i == 1 else f"z^{i}")
            cs = R.format(c)
            parts.append(f"({cs})" if not zs else f"{zs}*({cs})")
        if with_order:
            parts.append(f"O(z^{self.precision})")
        return " + ".join(parts) if parts else "0"

    def __repr__(self):
        return f"SkewLaurentSeries<{self.ring.id}>[{self.format()}]"

    def to_json(self):
        return {"shift": self.shift, "body": self.body.to_json()}

    @classmethod
    def from_json(cls, ring, obj):
        return laurent(SkewSeries.from_json(ring, obj["body"]), int(obj.get("shift", 0)))


def _coerce(f, x):
    if isinstance(x, SkewLaurentSeries):
        return x
    if isinstance(x, SkewSeries):
        return from_series(x)
    if isinstance(x, int):
        x = f.ring.scalar(x)
    return laurent_constant(f.ring, x, max(f.precision, 1))


def laurent(body, shift):
    """Canonicalize ``z^{-shift} * body``."""
    body = ser.to_right_form(body)
    if shift < 0:
        # z^{|shift|} * body is an index shift of the right coefficients
        k = -shift
        R = body.ring
        dense = [R.zero] * k + body.dense()
        return SkewLaurentSeries(SkewSeries.from_dense(R, dense, body.precision + k), 0)
    if body.is_zero():
        if body.precision >= shift:
            return SkewLaurentSeries(ser.zero(body.ring, body.precision - shift), 0)
        return SkewLaurentSeries(body, shift)
    k = min(shift, body.valuation)
    if k:
        body = SkewSeries(body.ring, body.valuation - k, body.coeffs, body.precision - k)
    return SkewLaurentSeries(body, shift - k)


def from_series(f):
    return laurent(f, 0)


def laurent_constant(ring, r, precision):
    return from_series(ser.constant(ring, r, precision))


def laurent_z_power(ring, k, precision):
    """z^k for any integer k, known to absolute precision ``precision``."""
    if k >= 0:
        return from_series(ser.z_power(ring, k, precision))
    body_prec = precision - k
    if body_prec <= 0:
        raise DegeneratePrecision("precision below the requested power")
    return laurent(ser.one(ring, body_prec), -k)


def move_past_zinv(f):
    """g with f z^{-1} = z^{-1} g, for a right-form power series f.

    g_i = tau^{-1}(r_i) - delta tau^{-1}(r_{i-1}); precision is preserved.
    """
    R, P = f.ring, f.precision
    d = f.dense()
    out = [R.zero] * P
    prev = None
    for i in range(P):
        u = R.tau_inv(d[i])
        out[i] = u
        if prev is not None and R.has_delta:
            out[i] = R.sub(out[i], R.delta(prev))
        prev = u
    return SkewSeries.from_dense(R, out, P)


def laurent_mul(f, g):
    """(z^{-a} F)(z^{-b} G) = z^{-(a+b)} phi^b(F) G with phi from move_past_zinv."""
    if isinstance(f, SkewSeries):
        f = from_series(f)
    g = _coerce(f, g)
    if f.ring is not g.ring:
        raise TypeError(f"ring mismatch: {f.ring.id} vs {g.ring.id}")
    F = f.body
    for _ in range(g.shift):
        F = move_past_zinv(F)
    body = ser.mul(F, g.body)
    return laurent(body, f.shift + g.shift)


def laurent_add(f, g):
    if f.ring is not g.ring:
        raise TypeError(f"ring mismatch: {f.ring.id} vs {g.ring.id}")
    n = max(f.shift, g.shift)
    R = f.ring

    def lifted(h):
        k = n - h.shift
        return SkewSeries.from_dense(R, [R.zero] * k + h.body.dense(), h.body.precision + k)

    return laurent(ser.add(lifted(f), lifted(g)), n)


def laurent_negate(f):
    return SkewLaurentSeries(ser.negate(f.body), f.shift)


def laurent_invert(f):
    """Inverse of z^{-n} z^v U with U(0) a unit: U^{-1} z^{n-v}."""
    if not isinstance(f, SkewLaurentSeries):
        f = from_series(f)
    if f.is_zero():
        raise NotUnit("zero has no inverse")
    body = f.body
    v = body.valuation
    unit_part = SkewSeries(body.ring, 0, body.coeffs, body.precision - v)
    if unit_part.precision <= 0:
        raise DegeneratePrecision("nothing known beyond the leading term")
    u_inv = ser.invert(unit_part)
    k = f.shift - v
    P = u_inv.precision
    zk = laurent_z_power(body.ring, k, P + k) if k >= 0 else laurent(ser.one(body.ring, P), -k)
    return laurent_mul(from_series(u_inv), zk)
