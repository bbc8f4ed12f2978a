"""Run every scenario under scenarios/ and print one line per file.

Usage: python3 scripts/run_all_scenarios.py [--out-dir reports/]
"""

import argparse
import pathlib
import sys
import time

from skewps.scenarios import run_scenario

ROOT = pathlib.Path(__file__).resolve().parent.parent


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out-dir", type=pathlib.Path)
    args = ap.parse_args()
    worst = 0
    for path in sorted((ROOT / "scenarios").glob("*.json")):
        t0 = time.perf_counter()
        code, rep = run_scenario(str(path))
        dt = time.perf_counter() - t0
        worst = max(worst, code)
        print(f"{'PASS' if code == 0 else 'FAIL'} {path.stem:40s} {dt:6.2f}s")
        if args.out_dir:
            args.out_dir.mkdir(parents=True, exist_ok=True)
            (args.out_dir / path.name).write_text(rep.to_json(), encoding="utf-8")
    return worst


if __name__ == "__main__":
    sys.exit(main())
