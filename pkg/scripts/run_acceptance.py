"""Run the acceptance criteria outside pytest and write one JSON report each.

    python3 scripts/run_acceptance.py --out results/ --only 1 2 5
"""
import argparse
import json
import pathlib
import sys

ROOT = pathlib.Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "tests"))

from acceptance import RUNNERS, timed  # noqa: E402


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", type=pathlib.Path, default=None, help="directory for criterion_N.json")
    ap.add_argument("--only", type=int, nargs="*", default=sorted(RUNNERS))
    args = ap.parse_args()

    if args.out:
        args.out.mkdir(parents=True, exist_ok=True)
    failed = []
    for n in args.only:
        report, elapsed = timed(RUNNERS[n])
        print(f"criterion {n}: {'PASS' if report['passed'] else 'FAIL'} ({elapsed:.2f} s)")
        if not report["passed"]:
            failed.append(n)
        if args.out:
            (args.out / f"criterion_{n}.json").write_text(json.dumps(report, indent=2, sort_keys=True) + "\n")
    sys.exit(1 if failed else 0)


if __name__ == "__main__":
    main()
