"""Bloch nonexistence certificate over n for every corpus measure.

Writes ``measure,n,lhs,rhs,ratio,ratio_over_log_n`` rows.  The ratio grows
like a constant times ``log n`` for measures with boundary mass; the fitted
slope gives the ``n`` at which the ratio would reach a target.
"""

import argparse
import csv
import math
from pathlib import Path

import numpy as np

from revcarleson.carleson import bloch_certificate
from revcarleson.corpus import NAMES, load_corpus


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--n", default="16,64,256,1024,4096,16384,65536")
    parser.add_argument("--target", type=float, default=10.0)
    parser.add_argument("--out", default="results/bloch_sweep.csv")
    args = parser.parse_args()
    ns = [int(x) for x in args.n.split(",")]
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    with out.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["measure", "n", "lhs", "rhs", "ratio", "ratio_over_log_n"])
        for name in NAMES:
            cert = bloch_certificate(load_corpus(name), ns)
            for n, lhs, rhs, ratio in zip(ns, cert.left_side, cert.right_side, cert.trend):
                writer.writerow([name, n, lhs, rhs, ratio, ratio / math.log(n)])
            # least-squares fit ratio ~ a + b log n on the three largest n
            logs = np.log(ns[-3:])
            b, a = np.polyfit(logs, cert.trend[-3:], 1)
            reach = math.exp((args.target - a) / b) if b > 0 else math.inf
            print(f"{name:15s} ratio at n={ns[-1]}: {cert.trend[-1]:.3g}; slope in log n {b:.3f}; "
                  f"ratio {args.target:g} near n ~ {reach:.2g}")
    print(f"table in {out}")


if __name__ == "__main__":
    main()
