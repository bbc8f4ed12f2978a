"""Brute-force multiplication by rewriting free words.

A word is a tuple of letters: coefficient generators (level 0) and one z
letter per series level. Each rule rewrites a letter standing just left of a
higher z letter,

    a z  ->  z tau(a)  +  z delta(a) z,

where tau(a) and delta(a) are written out by hand per ring, from the
definitions of the catalogued derivations, and never computed with the
series code. Any word holding N or more copies of some z letter is deleted,
which is the same as working modulo z^N. A normal word is
``z_m^a_m ... z_1^a_1 w`` with ``w`` over coefficient letters; its value is
read off directly as a nested coefficient.
"""

import random
import weakref
from dataclasses import dataclass, field

from skewps import series as ser
from skewps.report import Report
from skewps.rings import K4QuotientRing, PolyRing, PrimeField, RationalField, WithSkew, to_qq
from skewps.series import SkewSeries

__all__ = [
    "EncodingOverflow", "FreeTerm", "RewriteSystem", "normalize", "system_for_ring",
    "system_for_tower", "encode", "decode", "oracle_compare", "confluence_check",
    "MAX_TERMS", "MAX_PRECISION",
]

MAX_TERMS = 4
MAX_PRECISION = 8


class EncodingOverflow(ValueError):
    """The input is too large for the brute-force oracle."""


@dataclass
class FreeTerm:
    """A finite sum of scalar * word with scalars in ``field``."""

    field: object
    terms: dict = field(default_factory=dict)

    @classmethod
    def word(cls, k, word, scalar=None):
        return cls(k, {tuple(word): k.one if scalar is None else scalar})

    def add_term(self, word, c):
        k = self.field
        s = k.add(self.terms.get(word, k.zero), c)
        if k.is_zero(s):
            self.terms.pop(word, None)
        else:
            self.terms[word] = s

    def __add__(self, other):
        out = FreeTerm(self.field, dict(self.terms))
        for w, c in other.terms.items():
            out.add_term(w, c)
        return out

    def __mul__(self, other):
        k = self.field
        out = FreeTerm(k)
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                out.add_term(w1 + w2, k.mul(c1, c2))
        return out

    def scale(self, c):
        k = self.field
        return FreeTerm(k, {w: k.mul(c, s) for w, s in self.terms.items() if not k.is_zero(k.mul(c, s))})

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        return isinstance(other, FreeTerm) and self.terms == other.terms

    def format(self):
        if not self.terms:
            return "0"
        parts = []
        for w in sorted(self.terms):
            body = "*".join(w) if w else "1"
            parts.append(f"{self.terms[w]}*{body}")
        return " + ".join(parts)


@dataclass
class RewriteSystem:
    """Letters with levels, rules keyed by (letter, z letter), bounds per z letter."""

    field: object
    levels: dict
    rules: dict
    literal: object  # letter -> value in the base ring
    base: object
    cache: dict = field(default_factory=dict, repr=False)

    def z_letters(self):
        return sorted((l for l, v in self.levels.items() if v > 0), key=lambda l: -self.levels[l])


def _redexes(word, levels):
    out = []
    for i in range(len(word) - 1):
        lz = levels[word[i + 1]]
        if lz > 0 and levels[word[i]] < lz:
            out.append(i)
    return out


def _overweight(word, bounds):
    for z, n in bounds.items():
        if word.count(z) >= n:
            return True
    return False


def _append(system, bounds, word, letter, memo):
    """Normal form of (normal word) * letter, as {word: scalar}; memoized."""
    key = (word, letter)
    hit = memo.get(key)
    if hit is not None:
        return hit
    k = system.field
    levels = system.levels
    out = {}
    lz = levels[letter]
    if not word or lz == 0 or levels[word[-1]] >= lz:
        new = word + (letter,)
        if not _overweight(new, bounds):
            out[new] = k.one
    else:
        # a z -> z tau(a) + z delta(a) z
        head, a = word[:-1], word[-1]
        tau_t, delta_t = system.rules[(a, letter)]
        pieces = [(w, s) for w, s in tau_t.terms.items()]
        if delta_t is not None:
            pieces += [(w + (letter,), s) for w, s in delta_t.terms.items()]
        start = _append(system, bounds, head, letter, memo)
        for tail, s in pieces:
            cur = {w: k.mul(c, s) for w, c in start.items()}
            for l2 in tail:
                nxt = {}
                for w, c in cur.items():
                    for w2, c2 in _append(system, bounds, w, l2, memo).items():
                        v = k.add(nxt.get(w2, k.zero), k.mul(c, c2))
                        nxt[w2] = v
                cur = {w: c for w, c in nxt.items() if not k.is_zero(c)}
            for w, c in cur.items():
                v = k.add(out.get(w, k.zero), c)
                out[w] = v
        out = {w: c for w, c in out.items() if not k.is_zero(c)}
    memo[key] = out
    return out


def _normalize_insertion(term, system, bounds):
    k = system.field
    memo = system.cache.setdefault(("append", tuple(sorted(bounds.items()))), {})
    done = FreeTerm(k)
    for word, c in term.terms.items():
        # the part before the first redex is already normal
        spots = _redexes(word, system.levels)
        cut = spots[0] + 1 if spots else len(word)
        if _overweight(word[:cut], bounds):
            continue
        cur = {word[:cut]: k.one}
        for letter in word[cut:]:
            nxt = {}
            for w, c1 in cur.items():
                for w2, c2 in _append(system, bounds, w, letter, memo).items():
                    nxt[w2] = k.add(nxt.get(w2, k.zero), k.mul(c1, c2))
            cur = {w: v for w, v in nxt.items() if not k.is_zero(v)}
        for w, v in cur.items():
            done.add_term(w, k.mul(c, v))
    return done


STRATEGIES = ("leftmost", "rightmost", "random", "insertion")


def normalize(term, system, bounds, strategy="leftmost", rng=None):
    """Rewrite to normal form, deleting words past the bounds.

    ``strategy`` picks the redex: "leftmost", "rightmost" or "random"
    (which also picks the pending word at random; pass ``rng``).
    "insertion" builds each word letter by letter, pushing every new z
    letter left through the memoized rules.
    """
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}")
    if strategy == "insertion":
        return _normalize_insertion(term, system, bounds)
    k = system.field
    rng = rng or random.Random(0)
    pending = FreeTerm(k, dict(term.terms))
    done = FreeTerm(k)
    levels = system.levels
    while pending.terms:
        if strategy == "random":
            word = rng.choice(list(pending.terms))
        else:
            word = next(iter(pending.terms))
        c = pending.terms.pop(word)
        if _overweight(word, bounds):
            continue
        spots = _redexes(word, levels)
        if not spots:
            done.add_term(word, c)
            continue
        if strategy == "leftmost":
            i = spots[0]
        elif strategy == "rightmost":
            i = spots[-1]
        else:
            i = rng.choice(spots)
        a, z = word[i], word[i + 1]
        pre, post = word[:i], word[i + 2:]
        tau_t, delta_t = system.rules[(a, z)]
        for w, s in tau_t.terms.items():
            pending.add_term(pre + (z,) + w + post, k.mul(c, s))
        if delta_t is not None:
            for w, s in delta_t.terms.items():
                pending.add_term(pre + (z,) + w + (z,) + post, k.mul(c, s))
    return done


# ---------------------------------------------------------------------------
# hand-written rule tables


def _unwrap(R):
    while isinstance(R, WithSkew):
        R = R.base
    return R


def _base_letters(R):
    R = _unwrap(R)
    if isinstance(R, PolyRing):
        return ["t"]
    if isinstance(R, K4QuotientRing):
        return ["e1", "e2", "e3", "e4", "x"]
    return []


def _base_literal(R):
    B = _unwrap(R)

    def lit(name):
        return B.literal(name)

    return lit


def system_for_ring(ring, z="z"):
    """Rules for one series level over a catalogued ring."""
    R = _unwrap(ring)
    k = R.field
    T = lambda *w, c=None: FreeTerm.word(k, w, c)  # noqa: E731
    rules = {}
    if isinstance(R, PolyRing):
        kind = R.derivation
        if kind == "dt":           # t z = z t + z 1 z
            rules[("t", z)] = (T("t"), T())
        elif kind == "euler":      # t z = z t + z t z
            rules[("t", z)] = (T("t"), T("t"))
        elif kind == "qscale":     # t z = z (q t)
            rules[("t", z)] = (T("t", c=k.scalar(R.q)), None)
        else:                      # t z = z t
            rules[("t", z)] = (T("t"), None)
    elif isinstance(R, K4QuotientRing):
        # tau = alpha^{-1} sends e_j to e_{j+1}; tau(x) = x, delta(x) = e4 - e3
        for j in range(4):
            rules[(f"e{j + 1}", z)] = (T(f"e{(j + 1) % 4 + 1}"), None)
        rules[("x", z)] = (T("x"), T("e4") + T("e3", c=k.neg(k.one)))
    elif not isinstance(R, (RationalField, PrimeField)):
        raise EncodingOverflow(f"no rule table for {R.id}")
    levels = {l: 0 for l in _base_letters(R)}
    levels[z] = 1
    return RewriteSystem(k, levels, rules, _base_literal(R), R)


def system_for_tower(spec):
    """Rules read off a tower description (not from the built tower's maps)."""
    from skewps.rings import ring_from_id

    base = ring_from_id(spec.base)
    k = base.field
    T = lambda *w, c=None: FreeTerm.word(k, w, c)  # noqa: E731
    letters = _base_letters(base)
    levels = {l: 0 for l in letters}
    rules = {}
    prev_z = None
    counts = {}

    def fresh(stem):
        counts[stem] = counts.get(stem, 0) + 1
        return stem if counts[stem] == 1 else f"{stem}{counts[stem]}"

    def add_identity_level(z):
        for l in list(levels):
            rules[(l, z)] = (T(l), None)
        levels[z] = len([v for v in levels.values() if v > 0]) + 1

    for lv in spec.levels:
        if lv.kind == "weyl":
            q, d = k.scalar(to_qq(lv.q)), k.scalar(to_qq(lv.d))
            qi = k.inverse(q)
            zx, zy = fresh("zx"), fresh("zy")
            add_identity_level(zx)
            # letters of T commute with z_y; z_x z_y = z_y (q^-1 z_x) + z_y (-d q^-1 z_x^2) z_y
            for l in list(levels):
                if l != zx:
                    rules[(l, zy)] = (T(l), None)
            rules[(zx, zy)] = (T(zx, c=qi), T(zx, zx, c=k.neg(k.mul(d, qi))))
            levels[zy] = levels[zx] + 1
            prev_z = zy
        elif lv.kind == "delta0":
            q = k.scalar(to_qq(lv.q))
            z = fresh("zd")
            if prev_z is None:
                add_identity_level(z)
            else:
                # tau(z_prev) = q z_prev; below it, tau is the previous level's twist
                for l in list(levels):
                    if l == prev_z:
                        rules[(l, z)] = (T(l, c=q), None)
                    else:
                        rules[(l, z)] = (rules[(l, prev_z)][0], None)
                levels[z] = levels[prev_z] + 1
            prev_z = z
        else:
            raise EncodingOverflow(f"no rule table for level kind {lv.kind!r}")
    return RewriteSystem(k, levels, rules, _base_literal(base), base)


# ---------------------------------------------------------------------------
# encoding and decoding


def _express(R, r):
    """r as a list of (scalar, word) over the coefficient letters."""
    B = _unwrap(R)
    k = B.field
    if isinstance(B, (RationalField, PrimeField)):
        return [] if k.is_zero(r) else [(r, ())]
    if isinstance(B, PolyRing):
        return [(c, ("t",) * i) for i, c in enumerate(r) if c != 0]
    if isinstance(B, K4QuotientRing):
        out = []
        for n in range(4):
            for j in range(4):
                c = r[4 * n + j]
                if not k.is_zero(c):
                    out.append((c, (f"e{j + 1}",) + ("x",) * n))
        return out
    raise EncodingOverflow(f"cannot express elements of {B.id}")


def encode(f, ladder, system, check_size=True):
    """FreeTerm for a (nested) series; ``ladder`` lists (letter, coeff ring, N) top-down."""
    k = system.field
    out = FreeTerm(k)
    f = ser.to_right_form(f)
    if check_size and len(f.terms()) > MAX_TERMS:
        raise EncodingOverflow(f"{len(f.terms())} terms exceed the oracle limit {MAX_TERMS}")
    z, coeff, _ = ladder[0]
    for i, c in f.terms():
        if len(ladder) > 1:
            inner = encode(c, ladder[1:], system, check_size=False)
        else:
            inner = FreeTerm(k)
            for s, w in _express(coeff, c):
                inner.add_term(w, s)
        for w, s in inner.terms.items():
            out.add_term((z,) * i + w, s)
    return out


def _eval_word(system, w):
    """Value of a coefficient word in the base ring, memoized by prefix."""
    cache = system.cache
    v = cache.get(w)
    if v is None:
        B = system.base
        if not w:
            v = B.one
        else:
            v = B.mul(_eval_word(system, w[:-1]), system.literal(w[-1]))
        cache[w] = v
    return v


def decode(term, ladder, system, precision=None):
    """Nested series from a normal-form FreeTerm."""
    entries = []
    for w, s in term.terms.items():
        exps = []
        rest = w
        for z, _, _ in ladder:
            n = 0
            while n < len(rest) and rest[n] == z:
                n += 1
            exps.append(n)
            rest = rest[n:]
        if any(system.levels[l] > 0 for l in rest):
            raise ValueError(f"word {w} is not in normal form")
        entries.append((exps, s, rest))
    return _materialize(entries, ladder, system, precision)


def _materialize(entries, ladder, system, precision):
    z, coeff, N = ladder[0]
    P = precision or N
    buckets = {}
    for exps, s, rest in entries:
        if exps[0] < P:
            buckets.setdefault(exps[0], []).append((exps[1:], s, rest))
    dense = [coeff.zero] * P
    for i, sub in buckets.items():
        if len(ladder) > 1:
            dense[i] = _materialize(sub, ladder[1:], system, None)
        else:
            B = system.base
            v = B.zero
            for _, s, rest in sub:
                v = B.add(v, B.mul(B.scalar(s), _eval_word(system, rest)))
            dense[i] = v
    return SkewSeries.from_dense(coeff, dense, P)


# ---------------------------------------------------------------------------
# comparisons


def ladder_for(ring=None, tower=None):
    if tower is not None:
        return [(lv.name, lv.coeff, tower.N) for lv in reversed(tower.levels)]
    return [("z", ring, None)]


_SYSTEMS = weakref.WeakKeyDictionary()


def _setup(ring, tower):
    """Rule system and ladder, cached per ring or tower so memo tables persist."""
    key = tower if tower is not None else ring
    system = _SYSTEMS.get(key)
    if system is None:
        system = system_for_tower(tower.spec) if tower is not None else system_for_ring(ring)
        _SYSTEMS[key] = system
    return system, (ladder_for(tower=tower) if tower is not None else ladder_for(ring=ring))


def oracle_compare(f, g, N=None, tower=None, seed=None):
    """Compare mul(f, g) with the rewriting normal form of encode(f) encode(g)."""
    system, ladder = _setup(f.ring, tower)
    f, g = ser.to_right_form(f), ser.to_right_form(g)
    P = min(f.precision + g.valuation, g.precision + f.valuation)
    P = min(P, max(f.precision, g.precision) if N is None else N)
    if P > MAX_PRECISION:
        raise EncodingOverflow(f"precision {P} exceeds the oracle limit {MAX_PRECISION}")
    rep = Report("oracle-diff", anchor="series product equals free rewriting with r z -> z tau(r) + z delta(r) z",
                 params={"ring": f.ring.id, "precision": P}, seed=seed)
    top = ladder[0]
    ladder = [(top[0], top[1], P)] + ladder[1:]
    bounds = {z: n for z, _, n in ladder}
    ef, eg = encode(f, ladder, system), encode(g, ladder, system)
    rep.expect("encode_roundtrip", decode(ef, ladder, system) == ser.truncate(f, P) and
               decode(eg, ladder, system) == ser.truncate(g, P))
    nf = normalize(ef * eg, system, bounds, "insertion")
    got = decode(nf, ladder, system)
    want = ser.truncate(ser.mul(f, g), P)
    rep.expect("product_matches", got == want,
               lambda: {"f": f.to_json(), "g": g.to_json(), "oracle": got.to_json(), "series": want.to_json()})
    return rep


def random_term(system, rng, max_len=5, max_words=3):
    k = system.field
    letters = sorted(system.levels)
    t = FreeTerm(k)
    for _ in range(rng.randint(1, max_words)):
        w = tuple(rng.choice(letters) for _ in range(rng.randint(1, max_len)))
        t.add_term(w, k.scalar(rng.randint(-3, 3) or 1))
    return t


def confluence_check(system, bounds, count=200, seed=0):
    """Leftmost, rightmost and random redex choices give one normal form."""
    rng = random.Random(seed)
    rep = Report("oracle-confluence", anchor="rewriting normal forms do not depend on the order of rule use",
                 params={"letters": sorted(system.levels), "bounds": bounds, "count": count}, seed=seed)
    for _ in range(count):
        t = random_term(system, rng)
        a = normalize(t, system, bounds, "leftmost")
        b = normalize(t, system, bounds, "rightmost")
        c = normalize(t, system, bounds, "random", random.Random(rng.random()))
        d = normalize(t, system, bounds, "insertion")
        rep.expect("strategy_independent", a == b == c == d,
                   lambda: {"term": t.format(), "leftmost": a.format(), "rightmost": b.format()})
    return rep
