"""Deterministic check reports.

Assertions are kept in insertion order; repeated calls with the same id
aggregate into one entry that counts instances and keeps the first failing
witness. Serialization sorts keys so equal runs give byte-identical JSON.
"""

import json
from dataclasses import dataclass, field
from typing import Any


@dataclass
class Assertion:
    id: str
    passed: bool = True
    checked: int = 0
    detail: Any = None
    witness: Any = None


@dataclass
class Report:
    check: str
    anchor: str = ""
    params: dict = field(default_factory=dict)
    seed: Any = None
    assertions: list = field(default_factory=list)

    def expect(self, assertion_id, ok, witness=None, detail=None):
        """Record one instance; ``witness`` may be a zero-arg callable (lazy)."""
        entry = self._entry(assertion_id)
        entry.checked += 1
        if detail is not None and entry.detail is None:
            entry.detail = detail
        if not ok and entry.passed:
            entry.passed = False
            entry.witness = witness() if callable(witness) else witness
        return ok

    def note(self, assertion_id, detail):
        self._entry(assertion_id).detail = detail

    def _entry(self, assertion_id):
        for a in self.assertions:
            if a.id == assertion_id:
                return a
        a = Assertion(assertion_id)
        self.assertions.append(a)
        return a

    def merge(self, other, prefix=""):
        for a in other.assertions:
            self.assertions.append(Assertion(prefix + a.id, a.passed, a.checked, a.detail, a.witness))
        return self

    @property
    def passed(self):
        return all(a.passed for a in self.assertions)

    def failures(self):
        return [a for a in self.assertions if not a.passed]

    def get(self, assertion_id):
        return next(a for a in self.assertions if a.id == assertion_id)

    def to_dict(self):
        return {
            "check": self.check,
            "anchor": self.anchor,
            "params": self.params,
            "seed": self.seed,
            "passed": self.passed,
            "assertions": [
                {"id": a.id, "passed": a.passed, "checked": a.checked,
                 "detail": a.detail, "witness": a.witness}
                for a in sorted(self.assertions, key=lambda a: a.id)
            ],
        }

    def to_json(self):
        return json.dumps(self.to_dict(), sort_keys=True, indent=2, ensure_ascii=False) + "\n"

    def summary_lines(self):
        return [f"{'PASS' if a.passed else 'FAIL'} {self.check}/{a.id} ({a.checked})" for a in self.assertions]
