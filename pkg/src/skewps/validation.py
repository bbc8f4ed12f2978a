"""Sampled (and, for small spanning sets, exhaustive) axiom checks.

Failures are data: each check records how many instances it tried and the
first witness that broke it.
"""

import itertools
import random
from dataclasses import dataclass, field
from typing import Any

__all__ = ["CheckResult", "ValidationReport", "validate_ring", "validate_skew_derivation"]

# exhaustive spanning-set checks are used below these sizes
_EXHAUSTIVE_TRIPLES = 4096
_EXHAUSTIVE_PAIRS = 1024


@dataclass
class CheckResult:
    name: str
    passed: bool = True
    checked: int = 0
    witness: Any = None


@dataclass
class ValidationReport:
    subject: str
    seed: int
    sample_count: int
    checks: list = field(default_factory=list)

    @property
    def passed(self):
        return all(c.passed for c in self.checks)

    def failures(self):
        return [c for c in self.checks if not c.passed]

    def check(self, name):
        return next(c for c in self.checks if c.name == name)

    def to_dict(self, encode=str):
        return {
            "subject": self.subject,
            "seed": self.seed,
            "sample_count": self.sample_count,
            "passed": self.passed,
            "checks": [
                {"name": c.name, "passed": c.passed, "checked": c.checked,
                 "witness": None if c.witness is None else [encode(w) for w in c.witness]}
                for c in self.checks
            ],
        }


class _Recorder:
    def __init__(self, report):
        self.report = report
        self._by_name = {}

    def __call__(self, name, ok, *witness):
        res = self._by_name.get(name)
        if res is None:
            res = CheckResult(name)
            self._by_name[name] = res
            self.report.checks.append(res)
        res.checked += 1
        if not ok and res.passed:
            res.passed = False
            res.witness = witness


def _samples(ring, rng, count):
    span = list(ring.spanning_set())
    out = []
    for i in range(count):
        if span and i % 4 == 0:
            out.append(rng.choice(span))
        else:
            out.append(ring.sample(rng))
    return out


def validate_ring(ring, sample_count=500, seed=0):
    """Check the unital-ring axioms on seeded samples.

    Multiplicative associativity is also checked on every triple of the
    spanning set when that set is small, which settles it for
    finite-dimensional algebras.
    """
    rng = random.Random(seed)
    report = ValidationReport(ring.id, seed, sample_count)
    rec = _Recorder(report)
    R = ring
    xs = _samples(R, rng, sample_count)
    ys = _samples(R, rng, sample_count)
    zs = _samples(R, rng, sample_count)
    for a, b, c in zip(xs, ys, zs):
        rec("add_associative", R.eq(R.add(R.add(a, b), c), R.add(a, R.add(b, c))), a, b, c)
        rec("add_commutative", R.eq(R.add(a, b), R.add(b, a)), a, b)
        rec("add_identity", R.eq(R.add(a, R.zero), a), a)
        rec("add_inverse", R.is_zero(R.add(a, R.neg(a))), a)
        rec("mul_associative", R.eq(R.mul(R.mul(a, b), c), R.mul(a, R.mul(b, c))), a, b, c)
        rec("left_distributive", R.eq(R.mul(a, R.add(b, c)), R.add(R.mul(a, b), R.mul(a, c))), a, b, c)
        rec("right_distributive", R.eq(R.mul(R.add(a, b), c), R.add(R.mul(a, c), R.mul(b, c))), a, b, c)
        rec("mul_identity", R.eq(R.mul(R.one, a), a) and R.eq(R.mul(a, R.one), a), a)
        rec("zero_annihilates", R.is_zero(R.mul(R.zero, a)) and R.is_zero(R.mul(a, R.zero)), a)
    span = list(R.spanning_set())
    if len(span) ** 3 <= _EXHAUSTIVE_TRIPLES:
        for a, b, c in itertools.product(span, repeat=3):
            rec("mul_associative", R.eq(R.mul(R.mul(a, b), c), R.mul(a, R.mul(b, c))), a, b, c)
    return report


def validate_skew_derivation(ring, pair=None, sample_count=500, seed=0):
    """Check that (tau, tau_inv, delta) is a skew derivation of ``ring``.

    ``pair`` defaults to the ring's own; pass a :class:`skewps.rings.SkewPair`
    to test a different one.
    """
    pair = pair or ring.pair
    tau, tau_inv, delta = pair.tau, pair.tau_inv, pair.delta
    rng = random.Random(seed)
    report = ValidationReport(ring.id, seed, sample_count)
    rec = _Recorder(report)
    R = ring
    rec("tau_unital", R.eq(tau(R.one), R.one), R.one)
    rec("delta_of_one", R.is_zero(delta(R.one)), R.one)

    def pair_checks(a, b):
        rec("tau_additive", R.eq(tau(R.add(a, b)), R.add(tau(a), tau(b))), a, b)
        rec("tau_multiplicative", R.eq(tau(R.mul(a, b)), R.mul(tau(a), tau(b))), a, b)
        rec("delta_additive", R.eq(delta(R.add(a, b)), R.add(delta(a), delta(b))), a, b)
        lhs = delta(R.mul(a, b))
        rhs = R.add(R.mul(tau(a), delta(b)), R.mul(delta(a), b))
        rec("leibniz", R.eq(lhs, rhs), a, b)

    def single_checks(a):
        rec("tau_inverse", R.eq(tau(tau_inv(a)), a) and R.eq(tau_inv(tau(a)), a), a)

    span = list(R.spanning_set())
    for a in span:
        single_checks(a)
    if len(span) ** 2 <= _EXHAUSTIVE_PAIRS:
        for a, b in itertools.product(span, repeat=2):
            pair_checks(a, b)
    xs = _samples(R, rng, sample_count)
    ys = _samples(R, rng, sample_count)
    for a, b in zip(xs, ys):
        single_checks(a)
        pair_checks(a, b)
    return report
