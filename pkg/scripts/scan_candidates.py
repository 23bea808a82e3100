#!/usr/bin/env python3
"""Check the printed vacuum-type candidate lists and scan a rational grid for extras.

    python scripts/scan_candidates.py --order 200 --max-den 12 --workers 4
"""

import argparse
import json
import time

from qmlde.cli import scan_result_json
from qmlde.deligne import CAND1, CAND2
from qmlde.scanner import Branch, extra_passes, scan_grid, verify_candidate_lists


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--order", type=int, default=200)
    ap.add_argument("--max-num", type=int, default=6)
    ap.add_argument("--max-den", type=int, default=12)
    ap.add_argument("--workers", type=int, default=None)
    ap.add_argument("--json", help="write all scan results here")
    args = ap.parse_args()

    rep = verify_candidate_lists(args.order)
    for name, results in (("cand1 (minus)", rep.cand1), ("cand2 (plus)", rep.cand2)):
        print(name)
        for r in results:
            status = "pass" if r.vacuum_type else f"FAIL {r.failure_kind.value} at {r.failure_offset}"
            print(f"  k={str(r.k):>5}  {status:28}  {', '.join(str(c) for c in r.head)}")
    print("Deligne k = h-1 among cand2 passes:", rep.deligne_in_cand2)

    dump = {}
    for branch, listed in ((Branch.MINUS, CAND1), (Branch.PLUS, CAND2)):
        t0 = time.perf_counter()
        res = scan_grid(args.max_num, args.max_den, branch, args.order, workers=args.workers)
        extras = extra_passes(res, listed)
        passes = [str(r.k) for r in res if r.vacuum_type]
        print(f"grid {branch.value}: {len(res)} points, passes {passes}, "
              f"extras {[str(r.k) for r in extras]} ({time.perf_counter() - t0:.1f} s)")
        dump[branch.value] = [scan_result_json(r) for r in res]

    if args.json:
        with open(args.json, "w") as fh:
            json.dump(dump, fh, indent=1)


if __name__ == "__main__":
    main()
