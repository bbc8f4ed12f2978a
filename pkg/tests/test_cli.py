import json
import pathlib

import pytest

from skewps.cli import main

ROOT = pathlib.Path(__file__).resolve().parent.parent
SCEN = ROOT / "scenarios"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_eval(capsys):
    code, out, _ = run(capsys, "eval", "--ring", "poly_dt", "--prec", "4", "t*z + z^2")
    assert code == 0
    assert out.strip() == "z*(t) + z^2*(2) + O(z^4)"


def test_eval_json(capsys):
    code, out, _ = run(capsys, "eval", "--ring", "QQ", "--prec", "3", "--json", "1/2 + z")
    obj = json.loads(out)
    assert obj["ring"] == "QQ"
    assert obj["value"]["body"]["coeffs"] == ["1/2", "1"]


def test_mul_and_inv(capsys):
    code, out, _ = run(capsys, "mul", "--ring", "poly_dt", "--prec", "4", "t", "z")
    assert out.strip() == "z*(t) + z^2*(1) + O(z^4)"
    code, out, _ = run(capsys, "inv", "--ring", "poly_dt", "--prec", "4", "1 + z*t")
    assert out.strip() == "(1) + z*(-t) + z^2*(t^2) + z^3*(-t^3 + t) + O(z^4)"


def test_convert(capsys):
    code, out, _ = run(capsys, "convert", "--ring", "poly_dt", "--prec", "4", "--to", "left", "z*t")
    assert out.strip() == "(t)*z + (-1)*z^2 + O(z^4)"
    code, _, err = run(capsys, "convert", "--ring", "poly_dt", "--to", "left", "z^-1")
    assert code == 2


@pytest.mark.parametrize("argv", [
    ["eval", "--ring", "nope", "1"],
    ["eval", "--ring", "poly_dt", "t*(z"],
    ["eval", "--ring", "poly_dt", "--prec", "0", "1"],
    ["eval", "--ring", "poly_dt", "--prec", "100000", "1"],
    ["inv", "--ring", "poly_dt", "0"],
])
def test_usage_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and "error" in err


def test_argparse_usage_error(capsys):
    with pytest.raises(SystemExit) as info:
        main(["frobnicate"])
    assert info.value.code == 2


def test_verify_pass_and_out(capsys, tmp_path):
    out = tmp_path / "r.json"
    code, _, err = run(capsys, "verify", str(SCEN / "weyl-commutation-q1.json"), "--out", str(out))
    assert code == 0
    rep = json.loads(out.read_text())
    assert rep["passed"] and rep["check"] == "weyl-commutation"
    assert "PASS" in err


def test_verify_malformed_json(capsys, tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    code, _, err = run(capsys, "verify", str(p))
    assert code == 2


def test_verify_unknown_check(capsys, tmp_path):
    p = tmp_path / "s.json"
    p.write_text(json.dumps({"check": "everything"}))
    assert run(capsys, "verify", str(p))[0] == 2


def test_verify_failure_exit_code(capsys, tmp_path):
    # the d/dt derivation does not preserve <t>, so the scenario is a config error
    p = tmp_path / "s.json"
    p.write_text(json.dumps({"check": "prop2.7", "ring": "poly_dt", "ideal": "<t>"}))
    assert run(capsys, "verify", str(p))[0] == 2


def test_verify_assertion_failure_exit_code(capsys, tmp_path, monkeypatch):
    import skewps.scenarios as sc
    from skewps.report import Report

    def failing(*a, **k):
        rep = Report("ring-axioms")
        rep.expect("always_fails", False, witness="w")
        return rep

    monkeypatch.setattr(sc, "check_ring_axioms", failing)
    p = tmp_path / "s.json"
    p.write_text(json.dumps({"check": "ring-axioms", "ring": "QQ"}))
    code, out, _ = run(capsys, "verify", str(p))
    assert code == 1
    assert json.loads(out)["assertions"][0]["witness"] == "w"


def test_verify_timing_flag(capsys):
    code, out, _ = run(capsys, "verify", str(SCEN / "star-euler-t2.json"), "--timing")
    assert "timing_seconds" in json.loads(out)
    code, out, _ = run(capsys, "verify", str(SCEN / "star-euler-t2.json"))
    assert "timing_seconds" not in json.loads(out)


def test_tower_commands(capsys):
    cfg = str(SCEN / "towers" / "weyl-q2-delta0.json")
    code, out, _ = run(capsys, "tower", "--config", cfg)
    assert code == 0 and json.loads(out)["levels"] == ["zx", "zy", "zd"]
    code, out, _ = run(capsys, "tower", "--config", cfg, "--check", "normalizing", "--samples", "10")
    assert code == 0 and json.loads(out)["passed"]


def test_tower_rejected_config(capsys):
    code, _, err = run(capsys, "tower", "--config", str(SCEN / "towers" / "rejected-delta0-q2.json"))
    assert code == 2 and "q = 2" in err


def test_precision_env_cap(capsys, monkeypatch):
    import skewps.config as cfg
    monkeypatch.setenv("SKEWPS_MAX_PREC", "5")
    monkeypatch.setattr(cfg, "_max_precision", None)
    code, _, err = run(capsys, "eval", "--ring", "QQ", "--prec", "6", "1")
    assert code == 2 and "cap 5" in err
    monkeypatch.setattr(cfg, "_max_precision", None)
