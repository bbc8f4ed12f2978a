"""Named verification checks and the JSON scenario runner.

A scenario is a JSON object naming a check plus its parameters, e.g.
``{"check": "gr-leading", "ring": "poly_dt", "precision": 8, "samples": 500,
"seed": 1}``. Every check returns a :class:`skewps.report.Report`; reports
carry no timing, so equal inputs give byte-identical JSON.
"""

import json
import random

from skewps import series as ser
from skewps.config import check_precision
from skewps.ideals import SeriesIdealSpec, check_IS_equals_ideal, check_star_condition, make_ideal
from skewps.linalg import same_span
from skewps.oracle import confluence_check, oracle_compare, system_for_ring, system_for_tower, ladder_for
from skewps.report import Report
from skewps.rings import K4QuotientRing, PolyRing, PrimeField, RationalField, TruncPolyRing, WithSkew, ring_from_id
from skewps.tower import (
    LaurentRing, TowerConfigError, TowerSpec, build_tower, normalizing_check, tower_unit_check,
    weyl_commutation_check, weyl_pair, _identity,
)
from skewps.validation import validate_ring, validate_skew_derivation

__all__ = [
    "ScenarioError", "CHECKS", "CATALOG_RINGS", "run_scenario", "load_scenario",
    "check_ring_axioms", "check_skew_derivation", "check_series_axioms", "check_unit_lemma",
    "check_left_right", "check_gr_leading", "check_example_2_10", "check_oracle_diff",
    "check_tower_skew_derivation", "sample_unit", "sample_nonunit",
]

# one representative per catalogue family
CATALOG_RINGS = (
    "QQ", "Fp:101", "poly_dt", "poly_euler", "poly_qscale:2",
    "poly_trunc:4:euler", "k4_quotient", "k4_quotient:Fp:7",
)


class ScenarioError(ValueError):
    """Malformed scenario: bad JSON, unknown check, or invalid parameters."""


def _from_validation(rep, ring, check, anchor, params):
    out = Report(check, anchor=anchor, params=params, seed=rep.seed)
    from skewps.report import Assertion

    for c in rep.checks:
        w = None if c.witness is None else [ring.encode(x) for x in c.witness]
        out.assertions.append(Assertion(c.name, c.passed, c.checked, None, w))
    return out


def check_ring_axioms(ring, samples=500, seed=0):
    rep = validate_ring(ring, samples, seed)
    return _from_validation(rep, ring, "ring-axioms", "associative unital ring axioms",
                            {"ring": ring.id, "samples": samples})


def check_skew_derivation(ring, samples=500, seed=0):
    rep = validate_skew_derivation(ring, sample_count=samples, seed=seed)
    return _from_validation(rep, ring, "skew-derivation",
                            "delta(ab) = tau(a) delta(b) + delta(a) b with tau an automorphism",
                            {"ring": ring.id, "samples": samples})


def check_tower_skew_derivation(tower, samples=500, seed=0):
    """The lifted pair of every level, plus (sigma, D) on X-Laurent series."""
    out = Report("skew-derivation", anchor="sigma and D form a skew derivation of each tower level",
                 params={"tower": tower.spec.to_json(), "samples": samples}, seed=seed)
    for lv in tower.levels:
        rep = validate_skew_derivation(lv.coeff, sample_count=samples, seed=seed)
        out.merge(_from_validation(rep, lv.coeff, "", "", {}), prefix=f"{lv.name}/")
        if lv.kind == "weyl-y":
            xl = LaurentRing(_identity(tower.base), tower.N + 4, var="zx", min_exponent=-2)
            p = weyl_pair(lv.q, lv.d)
            wl = WithSkew(xl, p.tau, p.tau_inv, p.delta, name=xl.id)
            rep = validate_skew_derivation(wl, sample_count=min(samples, 200), seed=seed)
            out.merge(_from_validation(rep, wl, "", "", {}), prefix=f"{lv.name}/laurent/")
    return out


def _sample(R, rng, N, max_terms=4):
    return ser.sample_series(R, rng, N, max_terms=max_terms)


def check_series_axioms(ring, N=8, samples=1000, seed=0, normality_samples=500):
    """Associativity, both distributive laws and z-normality on seeded samples."""
    rng = random.Random(seed)
    rep = Report("series-associativity", anchor="S = R[[z; tau, delta]] is an associative ring; z is normal",
                 params={"ring": ring.id, "precision": N, "samples": samples}, seed=seed)
    mul, add = ser.mul, ser.add
    for _ in range(samples):
        f, g, h = _sample(ring, rng, N), _sample(ring, rng, N), _sample(ring, rng, N)
        fg, gh = mul(f, g), mul(g, h)
        lhs, rhs = mul(fg, h), mul(f, gh)
        rep.expect("associative", lhs == rhs,
                   lambda: {"f": f.to_json(), "g": g.to_json(), "h": h.to_json()})
        fh = mul(f, h)
        rep.expect("left_distributive", mul(f, add(g, h)) == add(fg, fh),
                   lambda: {"f": f.to_json(), "g": g.to_json(), "h": h.to_json()})
        rep.expect("right_distributive", mul(add(f, g), h) == add(fh, gh),
                   lambda: {"f": f.to_json(), "g": g.to_json(), "h": h.to_json()})
    z = ser.z_power(ring, 1, N)
    for _ in range(normality_samples):
        f = _sample(ring, rng, N)
        fz = mul(f, z)
        ok = fz.is_zero() or fz.valuation >= 1
        # f z = z g with g read off by shifting the right coefficients of f z down
        g = ser.SkewSeries.from_dense(ring, fz.dense()[1:], fz.precision - 1)
        rep.expect("z_normal", ok and mul(z, g) == fz, lambda: f.to_json())
    return rep


def _unwrap(R):
    while isinstance(R, WithSkew):
        R = R.base
    return R


def sample_unit(R, rng):
    B = _unwrap(R)
    k = B.field
    if isinstance(B, (RationalField, PrimeField)):
        c = k.zero
        while k.is_zero(c):
            c = k.sample(rng)
        return c
    if isinstance(B, TruncPolyRing):
        c = sample_unit(k, rng)
        return B.add(B.scalar(c), B.mul(B.t(), B.sample(rng)))
    if isinstance(B, PolyRing):
        return B.scalar(sample_unit(k, rng))
    if isinstance(B, K4QuotientRing):
        r = list(B.sample(rng))
        for j in range(4):
            r[j] = sample_unit(k, rng)
        return tuple(r)
    raise TypeError(f"no unit sampler for {B.id}")


def sample_nonunit(R, rng):
    B = _unwrap(R)
    k = B.field
    if isinstance(B, (RationalField, PrimeField)):
        return k.zero
    if isinstance(B, PolyRing):
        return B.mul(B.t(), B.sample(rng))
    if isinstance(B, K4QuotientRing):
        r = list(B.sample(rng))
        r[rng.randrange(4)] = k.zero
        return tuple(r)
    raise TypeError(f"no non-unit sampler for {B.id}")


def check_unit_lemma(ring, N=12, samples=200, seed=0):
    """Units of S are exactly the series with a unit constant coefficient."""
    rng = random.Random(seed)
    rep = Report("unit-lemma", anchor="f is a unit of S iff its constant coefficient is a unit of R; z lies in J(S)",
                 params={"ring": ring.id, "precision": N, "samples": samples}, seed=seed)
    z = ser.z_power(ring, 1, N)
    one = ser.one(ring, N)
    for _ in range(samples):
        tail = ser.mul(z, _sample(ring, rng, N))
        f = ser.add(ser.constant(ring, sample_unit(ring, rng), N), tail)
        ok = ser.is_unit(f)
        if ok:
            g = ser.invert(f)
            ok = ser.mul(f, g) == one and ser.mul(g, f) == one
        rep.expect("unit_constant_inverts_two_sided", ok, lambda: f.to_json())

        tail = ser.mul(z, _sample(ring, rng, N))
        h = ser.add(ser.constant(ring, sample_nonunit(ring, rng), N), tail)
        rep.expect("nonunit_constant_is_not_unit", not ser.is_unit(h), lambda: h.to_json())

        a = _sample(ring, rng, N)
        u = ser.add(one, ser.mul(z, a))
        ok = ser.is_unit(u)
        if ok:
            v = ser.invert(u)
            ok = ser.mul(u, v) == one and ser.mul(v, u) == one
        rep.expect("one_plus_z_a_is_unit", ok, lambda: a.to_json())
    rep.expect("z_is_not_unit", not ser.is_unit(z))
    return rep


def check_left_right(ring, N=8, samples=500, seed=0):
    """Side conversion round trips; the right and left commutation rules agree."""
    rng = random.Random(seed)
    rep = Report("left-right-roundtrip",
                 anchor="every element has right and left coefficient expansions; r z and z r rules agree",
                 params={"ring": ring.id, "precision": N, "samples": samples}, seed=seed)
    for _ in range(samples):
        f = ser.sample_series(ring, rng, N)
        back = ser.to_right_form(ser.to_left_form(f))
        rep.expect("right_left_right", back.strict_eq(f), lambda: f.to_json())
        lf = ser.SkewSeries.from_dense(ring, f.dense(), N, side=ser.LEFT)
        back = ser.to_left_form(ser.to_right_form(lf))
        rep.expect("left_right_left", back.strict_eq(lf), lambda: lf.to_json())
        rep.expect("constant_side_independent",
                   ring.eq(ser.to_left_form(f).coeff(0), f.coeff(0)), lambda: f.to_json())
    z = ser.z_power(ring, 1, N)
    for r in ring.spanning_set():
        rz = ser.commute_right(r, 1, N, ring)
        as_left = ser.SkewSeries.from_dense(ring, [ring.zero, r], N, side=ser.LEFT)
        rep.expect("right_rule_matches_left_form", ser.to_left_form(rz).strict_eq(as_left),
                   lambda: ring.encode(r))
        zr = ser.commute_left(r, N, ring)
        rep.expect("left_rule_matches_product", ser.to_right_form(zr) == ser.mul(z, ser.constant(ring, r, N)),
                   lambda: ring.encode(r))
        rep.expect("mul_matches_right_rule", ser.mul(ser.constant(ring, r, N), z) == rz,
                   lambda: ring.encode(r))
    return rep


def check_gr_leading(ring, N=8, samples=500, seed=0):
    """Leading terms multiply as in R[x; tau^{-1}] with right coefficients."""
    rng = random.Random(seed)
    rep = Report("gr-leading", anchor="gr(S) is the skew polynomial ring R[x; tau^-1]",
                 params={"ring": ring.id, "precision": N, "samples": samples}, seed=seed)
    inconclusive = 0
    for _ in range(samples):
        f, g = ser.sample_series(ring, rng, N), ser.sample_series(ring, rng, N)
        res = ser.gr_leading_check(f, g)
        if res is None:
            inconclusive += 1
            continue
        h = ser.mul(f, g)
        rep.expect("valuation_additive", not h.is_zero() and h.valuation == f.valuation + g.valuation,
                   lambda: {"f": f.to_json(), "g": g.to_json()})
        rep.expect("leading_coefficient_law", res, lambda: {"f": f.to_json(), "g": g.to_json()})
    rep.note("leading_coefficient_law", {"inconclusive": inconclusive})
    return rep


def check_example_2_10(N=16, samples=200, seed=0, ring=None):
    """The non-semiprime example: w = v x^2 satisfies w S w = 0 although w != 0."""
    R = ring or K4QuotientRing()
    rng = random.Random(seed)
    rep = Report("example-2.10", anchor="S is not semiprime: v x^2 S v x^2 = 0 with v x^2 != 0",
                 params={"ring": R.id, "precision": N, "samples": samples}, seed=seed)
    v = R.literal("v")
    x = R.literal("x")
    w = R.mul(v, R.mul(x, x))
    rep.expect("w_nonzero", not R.is_zero(w))
    basis = R.spanning_set()
    right = [R.to_vector(R.mul(w, b)) for b in basis]
    left = [R.to_vector(R.mul(b, w)) for b in basis]
    rep.expect("w_normal", same_span(right, left, R.field))
    z4 = ser.z_power(R, 4, N)
    V = ser.constant(R, v, N)
    rep.expect("z4_commutes_with_v", ser.mul(z4, V).strict_eq(ser.mul(V, z4)))
    W = ser.constant(R, w, N)
    for m in range(N):
        p = ser.mul(ser.mul(W, ser.z_power(R, m, N)), W)
        rep.expect("w_zm_w_zero", p.is_zero(), lambda: {"m": m, "product": p.to_json()})
    for _ in range(samples):
        f = ser.sample_series(R, rng, N)
        p = ser.mul(ser.mul(W, f), W)
        rep.expect("w_f_w_zero", p.is_zero(), lambda: f.to_json())
    return rep


def check_oracle_diff(ring=None, tower=None, N=6, samples=500, seed=0, confluence=200):
    """Series products against the rewriting oracle, plus strategy independence."""
    rng = random.Random(seed)
    subject = tower.ring.id if tower is not None else ring.id
    rep = Report("oracle-diff", anchor="series product equals free rewriting with r z -> z tau(r) + z delta(r) z",
                 params={"ring": subject, "precision": N if tower is None else tower.N,
                         "samples": samples, "confluence_terms": confluence}, seed=seed)
    for _ in range(samples):
        if tower is not None:
            f, g = tower.ring.sample(rng), tower.ring.sample(rng)
            r = oracle_compare(f, g, tower=tower)
        else:
            f, g = _sample(ring, rng, N), _sample(ring, rng, N)
            r = oracle_compare(f, g)
        for a in r.assertions:
            rep.expect(a.id, a.passed, a.witness)
    if tower is not None:
        system = system_for_tower(tower.spec)
        bounds = {z: n for z, _, n in ladder_for(tower=tower)}
    else:
        system = system_for_ring(ring)
        bounds = {"z": N}
    if confluence:
        rep.merge(confluence_check(system, bounds, confluence, seed))
    return rep


# ---------------------------------------------------------------------------
# scenario files


def _get(obj, key, kind, default=None, required=False):
    if key not in obj:
        if required:
            raise ScenarioError(f"missing key {key!r}")
        return default
    val = obj[key]
    if kind is int and (not isinstance(val, int) or isinstance(val, bool)):
        raise ScenarioError(f"{key!r} must be an integer")
    if kind is str and not isinstance(val, str):
        raise ScenarioError(f"{key!r} must be a string")
    return val


def _ring(obj, default=None):
    rid = _get(obj, "ring", str, default, required=default is None)
    try:
        return ring_from_id(rid)
    except ValueError as exc:
        raise ScenarioError(str(exc)) from None


def _prec(obj, default):
    n = _get(obj, "precision", int, default)
    try:
        return check_precision(n)
    except ValueError as exc:
        raise ScenarioError(str(exc)) from None


def _ideal(obj, ring):
    text = _get(obj, "ideal", str, required=True)
    from skewps.expr import ParseError, evaluate_text

    inner = text.strip()
    if inner.startswith("<") and inner.endswith(">"):
        inner = inner[1:-1]
    gens = []
    for part in (p for p in inner.split(",") if p.strip()):
        try:
            val = evaluate_text(part, ring, 1)
        except (ParseError, ValueError) as exc:
            raise ScenarioError(f"bad ideal generator {part!r}: {exc}") from None
        if val.shift or val.valuation > 0 and not val.is_zero():
            raise ScenarioError("ideal generators must be ring elements")
        gens.append(val.coeff(0))
    try:
        return make_ideal(ring, gens)
    except ValueError as exc:
        raise ScenarioError(str(exc)) from None


def _tower(obj, default_levels):
    cfg = obj.get("tower")
    if cfg is None:
        cfg = {"base": "QQ", "precision": obj.get("precision", 6), "levels": default_levels}
    try:
        return build_tower(TowerSpec.from_json(cfg))
    except TowerConfigError as exc:
        raise ScenarioError(str(exc)) from None


_WEYL = [{"kind": "weyl", "q": "1", "d": "1"}]


def _run_check(obj, seed):
    check = _get(obj, "check", str, required=True)
    samples = _get(obj, "samples", int, None)
    if samples is not None and samples < 0:
        raise ScenarioError("'samples' must be non-negative")

    def s(default):
        return default if samples is None else samples

    if check == "ring-axioms":
        return check_ring_axioms(_ring(obj), s(500), seed)
    if check == "skew-derivation":
        if "tower" in obj:
            return check_tower_skew_derivation(_tower(obj, _WEYL), s(500), seed)
        return check_skew_derivation(_ring(obj), s(500), seed)
    if check == "series-associativity":
        return check_series_axioms(_ring(obj), _prec(obj, 8), s(1000), seed)
    if check == "unit-lemma":
        return check_unit_lemma(_ring(obj), _prec(obj, 12), s(200), seed)
    if check == "left-right-roundtrip":
        return check_left_right(_ring(obj), _prec(obj, 8), s(500), seed)
    if check == "gr-leading":
        return check_gr_leading(_ring(obj), _prec(obj, 8), s(500), seed)
    if check == "prop2.7":
        ring = _ring(obj, "poly_euler")
        I = _ideal(obj, ring)
        try:
            spec = SeriesIdealSpec(I)
        except ValueError as exc:
            raise ScenarioError(str(exc)) from None
        return check_IS_equals_ideal(spec, _prec(obj, 8), s(100), seed)
    if check == "star":
        ring = _ring(obj, "poly_euler")
        I = _ideal(obj, ring)
        t = _get(obj, "t", int, required=True)
        if t < 1:
            raise ScenarioError("'t' must be at least 1")
        return check_star_condition(I, t, s(100), seed, _prec(obj, max(8, t + 2)))
    if check == "example-2.10":
        ring = _ring(obj, "k4_quotient")
        if not isinstance(ring, K4QuotientRing):
            raise ScenarioError("example-2.10 runs over a k4_quotient ring")
        return check_example_2_10(_prec(obj, 16), s(200), seed, ring)
    if check == "weyl-commutation":
        q = str(obj.get("q", "1"))
        d = str(obj.get("d", "1"))
        oracle_n = _get(obj, "oracle_precision", int, 6)
        try:
            return weyl_commutation_check(q, d, _prec(obj, 8), oracle_n, seed=seed)
        except (ValueError, ZeroDivisionError) as exc:
            raise ScenarioError(str(exc)) from None
    if check == "tower-units":
        return tower_unit_check(_tower(obj, _WEYL), s(200), seed)
    if check == "normalizing":
        return normalizing_check(_tower(obj, _WEYL), s(100), seed)
    if check == "oracle-diff":
        if "tower" in obj:
            return check_oracle_diff(tower=_tower(obj, _WEYL), samples=s(500), seed=seed,
                                     confluence=_get(obj, "confluence", int, 200))
        N = _prec(obj, 6)
        if N > 8:
            raise ScenarioError("the oracle runs at precision 8 or less")
        return check_oracle_diff(_ring(obj), N=N, samples=s(500), seed=seed,
                                 confluence=_get(obj, "confluence", int, 200))
    raise ScenarioError(f"unknown check {check!r}; known: {', '.join(CHECKS)}")


CHECKS = (
    "ring-axioms", "skew-derivation", "series-associativity", "unit-lemma",
    "left-right-roundtrip", "gr-leading", "prop2.7", "star", "example-2.10",
    "weyl-commutation", "tower-units", "normalizing", "oracle-diff",
)


def load_scenario(path):
    try:
        with open(path, encoding="utf-8") as fh:
            obj = json.load(fh)
    except OSError as exc:
        raise ScenarioError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ScenarioError(f"malformed JSON in {path}: {exc}") from None
    if not isinstance(obj, dict):
        raise ScenarioError("a scenario must be a JSON object")
    return obj


def run_scenario(scenario, seed=None):
    """Run a scenario (dict or path). Returns (exit code, report)."""
    obj = load_scenario(scenario) if not isinstance(scenario, dict) else scenario
    if seed is None:
        seed = _get(obj, "seed", int, 0)
    rep = _run_check(obj, seed)
    return (0 if rep.passed else 1), rep
