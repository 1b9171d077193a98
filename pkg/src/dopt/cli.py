"""Command-line interface: ``dopt params|verify|build|search``.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 budget exhausted.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict

from dopt import catalog as cat
from dopt.family import DifferenceFamily
from dopt.matrices import (DeterminantBudgetExceeded, assemble, certify_d_optimal,
                           circulant_from_block, det_exact)
from dopt.modring import subgroup_from_elements, subgroup_generated
from dopt.params import (ParameterSet, alpha_bound, enumerate_ps, ps_list_for_v,
                         series_lambda_eq_s, series_r_eq_s, xy_from_ps)
from dopt.search import Checkpoint, SearchProblem, SearchRun, dedupe, run_search_parallel

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _ints(text: str) -> list[int]:
    try:
        return [int(t) for t in text.replace(",", " ").split()]
    except ValueError:
        raise UsageError(f"expected a list of integers, got {text!r}") from None


def _emit_json(payload) -> None:
    print(json.dumps(payload, indent=1, sort_keys=True))


def _ps_row(ps: ParameterSet) -> dict:
    xy = xy_from_ps(ps)
    return {"v": ps.v, "r": ps.r, "s": ps.s, "lambda": ps.lam, "n": ps.n, "x": xy.x, "y": xy.y}


# -- params -----------------------------------------------------------------

def cmd_params(args) -> int:
    if args.v is not None:
        if args.v < 1 or args.v % 2 == 0:
            raise UsageError(f"v must be odd and positive, got {args.v}")
        rows = ps_list_for_v(args.v)
    elif args.range is not None:
        a, b = args.range
        if a > b:
            raise UsageError(f"invalid range {a} > {b}")
        rows = enumerate_ps(a, b)
    else:
        if args.x_max < 1:
            raise UsageError("--x-max must be at least 1")
        fn = series_lambda_eq_s if args.series == "lambda-eq-s" else series_r_eq_s
        rows = [fn(x) for x in range(1, args.x_max + 1)]
    if args.json:
        _emit_json([_ps_row(ps) for ps in rows])
    else:
        for ps in rows:
            xy = xy_from_ps(ps)
            print(f"{ps}  x={xy.x} y={xy.y}")
        print(f"{len(rows)} parameter set(s)")
    return EXIT_OK


# -- verify / build ---------------------------------------------------------

def _load_catalog(path):
    if path is None:
        return cat.builtin_catalog()
    try:
        return cat.load(path, verify=False)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None
    except cat.CatalogParseError as exc:
        raise UsageError(f"{path}: {exc}") from None


def _select(cf, label):
    if label is None:
        return list(cf)
    try:
        return [cf.get(label)]
    except KeyError:
        raise UsageError(f"unknown label {label!r}") from None


def cmd_verify(args) -> int:
    cf = _load_catalog(args.file)
    entries = _select(cf, args.label)
    results, ok_all = [], True
    for e in entries:
        try:
            df = e.family()
        except ValueError as exc:
            ok_all = False
            results.append({"label": e.label, "passed": False, "error": str(exc)})
            if not args.json:
                print(f"FAIL {e.label} {e.ps}: {exc}")
            continue
        cert = certify_d_optimal(df, e.ps, det=args.det or None, det_budget=args.det_budget)
        ok_all &= cert.passed
        results.append({"label": e.label, "ps": list(e.ps.astuple()), "passed": cert.passed,
                        "differences": cert.df_report.passed, "gram": cert.gram.passed,
                        "det": cert.det_status,
                        "violations": [d for d, _ in cert.df_report.violations]})
        if not args.json:
            det = "" if cert.det_status == "not-run" else f" det={cert.det_status}"
            extra = f" ({cert.df_report.message})" if cert.df_report.message else ""
            print(f"{'ok  ' if cert.passed else 'FAIL'} {e.label} {e.ps} "
                  f"differences={'pass' if cert.df_report.passed else 'fail'} "
                  f"gram={'pass' if cert.gram.passed else 'fail'}{det}{extra}")
    npass = sum(r["passed"] for r in results)
    if args.json:
        _emit_json({"passed": npass, "total": len(results), "entries": results})
    else:
        print(f"{npass}/{len(results)} pass")
    return EXIT_OK if ok_all else EXIT_FAIL


def cmd_build(args) -> int:
    cf = _load_catalog(args.file)
    (e,) = _select(cf, args.label)
    df = e.family()
    M = assemble(circulant_from_block(df.X), circulant_from_block(df.Y))
    try:
        with open(args.out, "w", newline="\n") as fh:
            fh.write(M.to_text())
    except OSError as exc:
        print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
        return EXIT_FAIL
    payload = {"label": e.label, "order": M.order, "out": args.out}
    code = EXIT_OK
    if args.det:
        bound = alpha_bound(df.v).value
        try:
            det = det_exact(M, args.det_budget)
        except DeterminantBudgetExceeded as exc:
            print(f"determinant budget exceeded: {exc}", file=sys.stderr)
            return EXIT_BUDGET
        payload.update(det=str(det), bound=str(bound), equal=det == bound)
        code = EXIT_OK if det == bound else EXIT_FAIL
    if args.json:
        _emit_json(payload)
    else:
        print(f"wrote order {M.order} matrix for {e.label} to {args.out}")
        if args.det:
            print(f"{payload['det']} {'=' if payload['equal'] else '!='} {payload['bound']}")
    return code


# -- search -----------------------------------------------------------------

def _problem_from_args(args) -> SearchProblem:
    if args.resume:
        try:
            ck = Checkpoint.load(args.resume)
        except (OSError, ValueError, KeyError) as exc:
            raise UsageError(f"cannot resume from {args.resume}: {exc}") from None
        ps = ck.ps
        H = subgroup_from_elements(ps.v, ck.H)
        prune, symmetry, seed, start = ck.prune, ck.symmetry, ck.seed_x, ck.cursor
    else:
        if args.ps is None or args.H is None:
            raise UsageError("--ps and --H are required unless --resume is given")
        ps = ParameterSet(*args.ps)
        try:
            H = (subgroup_generated if args.generated else subgroup_from_elements)(ps.v, _ints(args.H))
        except ValueError as exc:
            raise UsageError(f"invalid H: {exc}") from None
        prune, symmetry, start = not args.no_prune, not args.no_symmetry, 0
        seed = tuple(_ints(args.seed_x)) if args.seed_x else None
    try:
        return SearchProblem(ps, H, mode="first" if args.first else "all",
                             max_nodes=args.budget_nodes, max_seconds=args.budget_seconds,
                             prune=prune, symmetry=symmetry, seed_x=seed, start=start)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_search(args) -> int:
    problem = _problem_from_args(args)
    ps, H = problem.ps, problem.H
    found = []

    def emit(df):
        k = len(found) + 1
        e = cat.entry_from_family(df, ps, f"{ps.v}s-{k}", "search")
        found.append(e)
        if not args.json:
            sys.stdout.write("\n" + e.to_stanza())
            sys.stdout.flush()

    if not args.json:
        sys.stdout.write(f"format {cat.FORMAT_VERSION}\n")
    interrupted = False
    if args.jobs > 1:
        fams, stats, cursor = run_search_parallel(problem, args.jobs)
        for df in (fams if args.raw else dedupe(fams)):
            emit(df)
    else:
        run = SearchRun(problem)
        stream = iter(run) if args.raw else dedupe(run)
        try:
            for df in stream:
                emit(df)
        except KeyboardInterrupt:
            interrupted = True
        stats = run.stats
        cursor = None if run.finished else run.cursor
    if cursor is not None:
        ck = Checkpoint(ps, H.elements, cursor, stats, problem.prune, problem.symmetry, problem.seed_x)
        ck.save(args.checkpoint)
    summary = {"solutions": len(found), "stats": asdict(stats), "cursor": cursor,
               "checkpoint": args.checkpoint if cursor is not None else None}
    if args.json:
        summary["entries"] = [e.to_dict() for e in found]
        _emit_json(summary)
    else:
        print(f"# {len(found)} solution(s), {stats.nodes} nodes, {stats.seconds:.2f} s", file=sys.stderr)
        if cursor is not None:
            print(f"# stopped at cursor {cursor}; checkpoint written to {args.checkpoint}",
                  file=sys.stderr)
    return EXIT_BUDGET if (cursor is not None or interrupted) else EXIT_OK


# -- parser -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="dopt", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("params", help="list normalized D-optimal parameter sets")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--v", type=int)
    g.add_argument("--range", type=int, nargs=2, metavar=("A", "B"))
    g.add_argument("--series", choices=["lambda-eq-s", "r-eq-s"])
    p.add_argument("--x-max", type=int, default=15)
    p.set_defaults(func=cmd_params)

    p = sub.add_parser("verify", help="certify catalog entries")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--catalog", action="store_true", help="built-in catalog (default)")
    g.add_argument("--file")
    p.add_argument("--label")
    p.add_argument("--det", action="store_true", help="also compare the exact determinant with the bound")
    p.add_argument("--det-budget", type=float, default=None, metavar="SECONDS")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("build", help="write the order-2v matrix of an entry")
    p.add_argument("--label", required=True)
    p.add_argument("--file", help="catalog file (default: built-in)")
    p.add_argument("--out", required=True)
    p.add_argument("--det", action="store_true")
    p.add_argument("--det-budget", type=float, default=None, metavar="SECONDS")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("search", help="orbit backtracking search; prints catalog stanzas")
    p.add_argument("--ps", type=int, nargs=4, metavar=("V", "R", "S", "LAMBDA"))
    p.add_argument("--H", help="comma-separated subgroup elements (or generators with --generated)")
    p.add_argument("--generated", action="store_true")
    p.add_argument("--budget-nodes", type=int)
    p.add_argument("--budget-seconds", type=float)
    p.add_argument("--resume", metavar="PATH")
    p.add_argument("--checkpoint", default="search.ckpt", metavar="PATH")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--raw", action="store_true", help="do not deduplicate equivalent families")
    p.add_argument("--first", action="store_true", help="stop after the first solution")
    p.add_argument("--seed-x", help="orbit representatives fixing block X")
    p.add_argument("--no-prune", action="store_true")
    p.add_argument("--no-symmetry", action="store_true")
    p.set_defaults(func=cmd_search)

    for sp in sub.choices.values():
        sp.add_argument("--json", action="store_true", help="machine-readable output")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"dopt {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
