"""Besov quasinorms of the Blaschke products against ``(log n)^(1/q - 1/p)``.

Writes ``n,besov,log_growth,ratio`` rows.
"""

import argparse
import csv
from pathlib import Path

from revcarleson.cli import blaschke_certificate
from revcarleson.quad import QuadConfig


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--n", default="2,4,8,16,32")
    parser.add_argument("--p", type=float, default=4.0)
    parser.add_argument("--q", type=float, default=2.0)
    parser.add_argument("--out", default="results/blaschke_besov.csv")
    args = parser.parse_args()
    ns = [int(x) for x in args.n.split(",")]
    cert = blaschke_certificate(ns, args.p, args.q, QuadConfig())
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    with out.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["n", "besov", "log_growth", "ratio"])
        for row in zip(ns, cert.left_side, cert.right_side, cert.trend):
            writer.writerow(row)
            print("n={:3d} besov {:.6f} (log n)^e {:.6f} ratio {:.4f}".format(*row))
    print(f"table in {out}")


if __name__ == "__main__":
    main()
