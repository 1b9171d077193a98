"""Certify every built-in design; ``--det`` also computes each exact determinant.

With --det the four new orders (222, 234, 258, 278) plus 170, 226, 290 are
all run; expect a few seconds each.
"""

import argparse
import time

from dopt.catalog import builtin_catalog
from dopt.matrices import certify_d_optimal


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--det", action="store_true")
    ap.add_argument("--det-budget", type=float, default=600.0)
    ap.add_argument("--label", action="append", help="restrict to these labels")
    args = ap.parse_args()

    failed = 0
    for e in builtin_catalog():
        if args.label and e.label not in args.label:
            continue
        t0 = time.perf_counter()
        cert = certify_d_optimal(e.family(), e.ps, det=args.det, det_budget=args.det_budget)
        dt = time.perf_counter() - t0
        failed += not cert.passed
        line = (f"{e.label:8s} {str(e.ps):20s} differences={cert.df_report.passed} "
                f"gram={cert.gram.passed} det={cert.det_status}")
        print(f"{line}  [{dt:.2f} s]")
    print("all passed" if not failed else f"{failed} failed")
    return 1 if failed else 0


if __name__ == "__main__":
    raise SystemExit(main())
