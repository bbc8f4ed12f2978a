"""``skewps`` command line.

Exit status: 0 on success or when every assertion passes, 1 when a check
fails (the report is still written), 2 for usage, parse or config errors.
"""

import argparse
import json
import sys
import time

from skewps import laurent as lau
from skewps import series as ser
from skewps.config import check_precision
from skewps.expr import ParseError, as_series, evaluate_text
from skewps.rings import CATALOG_IDS, NotUnit, ring_from_id
from skewps.scenarios import ScenarioError, check_oracle_diff, check_tower_skew_derivation, run_scenario
from skewps.tower import TowerConfigError, TowerSpec, build_tower, normalizing_check, tower_unit_check

TOWER_CHECKS = ("skew-derivation", "tower-units", "normalizing", "oracle-diff")


class UsageError(Exception):
    pass


def _ring(rid):
    try:
        return ring_from_id(rid)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _prec(n):
    try:
        return check_precision(n)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _value(text, ring, prec):
    try:
        return evaluate_text(text, ring, prec)
    except ParseError as exc:
        raise UsageError(f"parse error: {exc}") from None
    except NotUnit as exc:
        raise UsageError(f"not invertible: {exc}") from None
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _emit(args, value, ring, extra=None):
    if args.json:
        obj = {"ring": ring.id, "value": value.to_json()}
        if extra:
            obj.update(extra)
        print(json.dumps(obj, sort_keys=True, ensure_ascii=False))
    else:
        print(value.format())


def _write_report(rep, out, timing=None):
    obj = rep.to_dict()
    if timing is not None:
        obj["timing_seconds"] = round(timing, 3)
    text = json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
        for line in rep.summary_lines():
            print(line, file=sys.stderr)
    else:
        sys.stdout.write(text)


def cmd_eval(args):
    ring = _ring(args.ring)
    _emit(args, _value(args.expr, ring, _prec(args.prec)), ring)
    return 0


def cmd_mul(args):
    ring = _ring(args.ring)
    P = _prec(args.prec)
    a, b = _value(args.a, ring, P), _value(args.b, ring, P)
    _emit(args, lau.laurent_mul(a, b), ring)
    return 0


def cmd_inv(args):
    ring = _ring(args.ring)
    a = _value(args.expr, ring, _prec(args.prec))
    try:
        inv = lau.laurent_invert(a)
    except NotUnit as exc:
        raise UsageError(f"not invertible: {exc}") from None
    _emit(args, inv, ring)
    return 0


def cmd_convert(args):
    ring = _ring(args.ring)
    val = _value(args.expr, ring, _prec(args.prec))
    f = as_series(val)
    if f is None:
        raise UsageError("convert needs a power series (no negative powers of z)")
    f = ser.to_left_form(f) if args.to == "left" else ser.to_right_form(f)
    _emit(args, f, ring)
    return 0


def cmd_verify(args):
    t0 = time.perf_counter()
    try:
        code, rep = run_scenario(args.scenario, seed=args.seed)
    except ScenarioError as exc:
        raise UsageError(str(exc)) from None
    _write_report(rep, args.out, time.perf_counter() - t0 if args.timing else None)
    return code


def cmd_tower(args):
    try:
        spec = TowerSpec.load(args.config)
        tower = build_tower(spec, seed=args.seed)
    except TowerConfigError as exc:
        raise UsageError(f"tower config: {exc}") from None
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read {args.config}: {exc}") from None
    if args.check is None:
        print(json.dumps({"tower": spec.to_json(), "levels": tower.names, "ring": tower.ring.id},
                         sort_keys=True, indent=2))
        return 0
    t0 = time.perf_counter()
    n = args.samples
    if args.check == "skew-derivation":
        rep = check_tower_skew_derivation(tower, n or 500, args.seed)
    elif args.check == "tower-units":
        rep = tower_unit_check(tower, n or 200, args.seed)
    elif args.check == "normalizing":
        rep = normalizing_check(tower, n or 100, args.seed)
    else:
        rep = check_oracle_diff(tower=tower, samples=n or 100, seed=args.seed)
    _write_report(rep, args.out, time.perf_counter() - t0 if args.timing else None)
    return 0 if rep.passed else 1


def build_parser():
    p = argparse.ArgumentParser(prog="skewps", description="Exact skew power series and Laurent series arithmetic.")
    sub = p.add_subparsers(dest="command", required=True)

    def arith(name, help_text, *positional):
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("--ring", required=True, help="ring id, one of: " + ", ".join(CATALOG_IDS))
        sp.add_argument("--prec", type=int, default=8, help="working precision N (series known mod z^N)")
        sp.add_argument("--json", action="store_true", help="print JSON instead of text")
        for pos in positional:
            sp.add_argument(pos)
        return sp

    arith("eval", "evaluate an expression", "expr").set_defaults(func=cmd_eval)
    arith("mul", "multiply two expressions", "a", "b").set_defaults(func=cmd_mul)
    arith("inv", "invert an expression", "expr").set_defaults(func=cmd_inv)
    cv = arith("convert", "rewrite with coefficients on the left or right of z", "expr")
    cv.add_argument("--to", choices=("left", "right"), default="left")
    cv.set_defaults(func=cmd_convert)

    vp = sub.add_parser("verify", help="run a scenario file and emit a JSON report")
    vp.add_argument("scenario")
    vp.add_argument("--out", help="write the report here instead of stdout")
    vp.add_argument("--seed", type=int, help="override the scenario seed")
    vp.add_argument("--timing", action="store_true", help="add wall time to the report (breaks byte-identity)")
    vp.set_defaults(func=cmd_verify)

    tp = sub.add_parser("tower", help="build a tower from JSON and optionally run a check")
    tp.add_argument("--config", required=True)
    tp.add_argument("--check", choices=TOWER_CHECKS)
    tp.add_argument("--samples", type=int)
    tp.add_argument("--seed", type=int, default=0)
    tp.add_argument("--out")
    tp.add_argument("--timing", action="store_true")
    tp.set_defaults(func=cmd_tower)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"skewps: error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"skewps: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
