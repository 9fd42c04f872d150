"""Growth of ``sup_r n r^(n-1) (1-r)^(1-s)`` in ``n`` for several ``s``.

Writes ``s,n,numeric,closed_form,lower_envelope`` rows.
"""

import argparse
import csv
from pathlib import Path

from revcarleson.carleson import triebel_s_growth, triebel_s_lower_envelope


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--s", default="0.1,0.25,0.5,0.9")
    parser.add_argument("--out", default="results/triebel_growth.csv")
    args = parser.parse_args()
    ns = [10 ** k for k in range(1, 7)]
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    with out.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["s", "n", "numeric", "closed_form", "lower_envelope"])
        for s in (float(x) for x in args.s.split(",")):
            vals = []
            for n in ns:
                num, closed = triebel_s_growth(n, s)
                writer.writerow([s, n, num, closed, triebel_s_lower_envelope(n, s)])
                vals.append(closed)
            print(f"s={s:<5g} growth 1e2 -> 1e6: {vals[5] / vals[1]:.3g}x")
    print(f"table in {out}")


if __name__ == "__main__":
    main()
