import json
import pathlib

import pytest

from skewps.scenarios import CHECKS, ScenarioError, run_scenario

ROOT = pathlib.Path(__file__).resolve().parent.parent
SHIPPED = sorted((ROOT / "scenarios").glob("*.json"))


def test_every_check_has_a_shipped_scenario():
    shipped = {json.loads(p.read_text())["check"] for p in SHIPPED}
    assert set(CHECKS) - {"normalizing"} <= shipped
    assert len(SHIPPED) >= 12


@pytest.mark.parametrize("path", SHIPPED, ids=lambda p: p.stem)
def test_shipped_scenario_passes(path):
    code, rep = run_scenario(str(path))
    assert code == 0, [a.id for a in rep.failures()]
    assert rep.anchor


@pytest.mark.parametrize("name", ["star-euler-t2", "example-2.10", "oracle-diff-k4"])
def test_reports_are_byte_identical(name):
    obj = json.loads((ROOT / "scenarios" / f"{name}.json").read_text())
    obj["samples"] = min(obj.get("samples", 50), 50)
    a = run_scenario(dict(obj))[1].to_json()
    b = run_scenario(dict(obj))[1].to_json()
    assert a == b


def test_seed_override_changes_seed_echo():
    obj = {"check": "gr-leading", "ring": "poly_dt", "samples": 20}
    assert run_scenario(obj, seed=5)[1].seed == 5


@pytest.mark.parametrize("bad", [
    {},
    {"check": "nope"},
    {"check": "gr-leading"},
    {"check": "gr-leading", "ring": "poly_zz"},
    {"check": "gr-leading", "ring": "poly_dt", "precision": -1},
    {"check": "gr-leading", "ring": "poly_dt", "samples": "many"},
    {"check": "star", "ideal": "<t>"},
    {"check": "star", "ideal": "<t>", "t": 0},
    {"check": "star", "ideal": "<t +>", "t": 1},
    {"check": "example-2.10", "ring": "poly_dt"},
    {"check": "oracle-diff", "ring": "poly_dt", "precision": 12},
    {"check": "tower-units", "tower": {"base": "QQ", "levels": [{"kind": "weyl", "q": "1"}, {"kind": "delta0", "q": "2"}]}},
])
def test_bad_scenarios(bad):
    with pytest.raises(ScenarioError):
        run_scenario(bad)


def test_assertions_sorted_by_id():
    rep = run_scenario({"check": "unit-lemma", "ring": "QQ", "samples": 5})[1]
    ids = [a["id"] for a in rep.to_dict()["assertions"]]
    assert ids == sorted(ids)
