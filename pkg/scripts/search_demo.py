"""Exhaustive orbit searches at small orders, with solution classes and timing.

Runs the KKS-parameter sets for v = 7, 13, 21, the r = s sets for v = 13, 41,
and the full v = 85 space for the order-8 subgroup {1,9,16,19,21,49,59,81}.
"""

import argparse
import time

from dopt.family import equivalent
from dopt.catalog import builtin_catalog
from dopt.modring import subgroup_generated
from dopt.params import ParameterSet
from dopt.search import SearchProblem, dedupe, run_search

CASES = [
    ((7, 3, 1, 1), ()),
    ((13, 6, 3, 3), ()),
    ((13, 4, 4, 2), ()),
    ((21, 10, 6, 6), (4,)),
    ((41, 16, 16, 12), (10,)),
    ((85, 36, 36, 30), (9, 16)),
]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--budget-seconds", type=float, default=120.0)
    args = ap.parse_args()
    known85 = builtin_catalog().get("85a-1").family()
    for ps, gens in CASES:
        H = subgroup_generated(ps[0], gens)
        run = run_search(SearchProblem(ParameterSet(*ps), H, max_seconds=args.budget_seconds))
        t0 = time.perf_counter()
        classes = list(dedupe(run))
        dt = time.perf_counter() - t0
        status = "budget" if run.stats.exhausted else "complete"
        print(f"{str(ParameterSet(*ps)):20s} |H|={H.order:2d} solutions={run.stats.solutions:5d} "
              f"classes={len(classes):3d} nodes={run.stats.nodes:7d} {status} [{dt:.2f} s]")
        if ps[0] == 85:
            hit = any(equivalent(df, known85) for df in classes)
            print(f"  catalog entry 85a-1 among the classes: {hit}")


if __name__ == "__main__":
    main()
