"""Run the acceptance criteria and write one CSV row per criterion.

Usage: python3 scripts/run_acceptance.py [--criteria 1,7] [--out results/acceptance.csv]
"""

import argparse
import csv
import sys
from pathlib import Path

from revcarleson.acceptance import run_all


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--criteria", help="comma-separated criterion numbers")
    parser.add_argument("--out", default="results/acceptance.csv")
    args = parser.parse_args()
    numbers = [int(x) for x in args.criteria.split(",")] if args.criteria else None
    results = run_all(numbers=numbers)
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    with out.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["number", "name", "passed", "seconds", "detail"])
        for r in results:
            print(r.line())
            writer.writerow([r.number, r.name, r.passed, f"{r.seconds:.3f}", r.detail])
    passed = sum(r.passed for r in results)
    print(f"{passed}/{len(results)} criteria passed; table in {out}")
    return 0 if passed == len(results) else 1


if __name__ == "__main__":
    sys.exit(main())
