#!/usr/bin/env python3
"""Compare closed-form and MLDE characters for the Deligne series and print a table.

    python scripts/verify_deligne.py --order 200 [--json out.json]
"""

import argparse
import json
import time

from qmlde.cli import report_json
from qmlde.deligne import LABELS, verify_character


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--order", type=int, default=200)
    ap.add_argument("--json", help="write full reports here")
    args = ap.parse_args()

    reports = []
    print(f"{'g':4} {'h':>3} {'level':>6} {'c':>5} {'dim':>5} {'agree':>6}  first coefficients")
    for lbl in LABELS:
        t0 = time.perf_counter()
        rep = verify_character(lbl, args.order)
        e = rep.entry
        head = ", ".join(str(c) for c in rep.mlde_solution.coeffs[:6])
        print(f"{lbl:4} {e.h_dual:>3} {str(e.level):>6} {str(e.central_charge):>5} {e.dim_g:>5} "
              f"{rep.agree_to_order:>6}  {head}  ({time.perf_counter() - t0:.2f} s)")
        if rep.variant_agreement:
            print(f"     E1^(3) variants: {rep.variant_agreement}")
        reports.append(rep)

    if args.json:
        with open(args.json, "w") as fh:
            json.dump([report_json(r) for r in reports], fh, indent=1)


if __name__ == "__main__":
    main()
