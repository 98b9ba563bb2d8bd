"""Command line: ``skl verify``, ``skl export``, ``skl report``.

Exit status: 0 all checks pass, 1 some check failed, 2 usage or resource error.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from functools import partial

from .autgroup import DEFAULT_MAX_VERTICES, default_node_budget
from .formats import to_dimacs, to_graph6
from .generators import Params, ParameterError, build_g_definitional, build_stable_kneser
from .verify import (CHECK_IDS, DEFAULT_COLOR_BUDGET, SUITES, Budgets, dumps, run_triple,
                     select_checks, sweep_triples)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def parse_range(text: str) -> list[int]:
    """``3``, ``3..5`` (inclusive) or comma-separated mixtures like ``2,4..6``."""
    out = []
    try:
        for part in text.split(","):
            if ".." in part:
                lo, hi = part.split("..")
                lo, hi = int(lo), int(hi)
                if lo > hi:
                    raise UsageError(f"empty range {part!r}")
                out.extend(range(lo, hi + 1))
            else:
                out.append(int(part))
    except ValueError:
        raise UsageError(f"malformed range {text!r}") from None
    return sorted(set(out))


def _suites(values) -> list[str]:
    names = []
    for v in values or ["all"]:
        names.extend(x.strip() for x in v.split(",") if x.strip())
    bad = [x for x in names if x != "all" and x not in SUITES]
    if bad:
        raise UsageError(f"unknown suite {bad[0]!r}; choose from {', '.join(SUITES + ('all',))}")
    return names


def _format_human(rec: dict) -> str:
    p = rec["params"]
    head = f"n={p['n']:<3} k={p['k']} s={p['s']}"
    if rec["type"] == "summary":
        return f"{head}  summary: {rec['passed']} pass, {rec['failed']} fail, {rec['skipped']} skipped"
    extra = rec["reason"] if rec["status"] != "pass" else json.dumps(rec["detail"], sort_keys=True)
    line = f"{head}  {rec['check']:<28} {rec['status'].upper():<7} {extra}"
    if rec["status"] == "fail":
        line += f"  witness={json.dumps(rec['witness'], sort_keys=True)}"
    return line


def cmd_verify(args) -> int:
    s_values = parse_range(args.s)
    k_values = parse_range(args.k)
    if (args.n is None) == (args.n_offset is None):
        raise UsageError("give exactly one of --n or --n-offset")
    triples = sweep_triples(s_values, k_values,
                            parse_range(args.n) if args.n is not None else None,
                            parse_range(args.n_offset) if args.n_offset is not None else None)
    if not triples:
        raise UsageError("sweep contains no triple with s >= 2, k >= 1, n >= sk")
    checks = select_checks(_suites(args.suite))
    budgets = Budgets(args.node_budget, args.color_budget, args.max_vertices)
    job = partial(run_triple, checks=checks, budgets=budgets, timings=args.timings)

    out = open(args.out, "w") if args.out else sys.stdout
    failed = False
    try:
        if args.jobs > 1:
            pool = ProcessPoolExecutor(args.jobs)
            results = pool.map(job, triples)  # map preserves triple order
        else:
            pool, results = None, map(job, triples)
        for records in results:
            for rec in records:
                failed |= rec["type"] == "check" and rec["status"] == "fail"
                print(dumps(rec) if args.json or args.out else _format_human(rec), file=out, flush=True)
        if pool:
            pool.shutdown()
    finally:
        if args.out:
            out.close()
    return EXIT_FAIL if failed else EXIT_OK


def cmd_export(args) -> int:
    p = Params(args.n, args.k, args.s)
    g = build_stable_kneser(p) if args.which == "kg" else build_g_definitional(p)
    data = to_graph6(g) + b"\n" if args.format == "graph6" else to_dimacs(g).encode("ascii")
    if args.out in (None, "-"):
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
    else:
        with open(args.out, "wb") as fh:
            fh.write(data)
    return EXIT_OK


STATUS_MARK = {"pass": "P", "fail": "F", "skipped": "S"}


def load_reports(paths) -> dict[tuple, dict[str, str]]:
    """(s, k, n) -> {check id: status}, merged over all files."""
    matrix: dict[tuple, dict[str, str]] = {}
    for path in paths:
        with open(path) as fh:
            for lineno, line in enumerate(fh, 1):
                if not line.strip():
                    continue
                try:
                    rec = json.loads(line)
                    p = rec["params"]
                    key = (p["s"], p["k"], p["n"])
                    if rec["type"] == "check":
                        if rec["status"] not in STATUS_MARK:
                            raise ValueError(f"unknown status {rec['status']!r}")
                        matrix.setdefault(key, {})[rec["check"]] = rec["status"]
                    elif rec["type"] == "summary":
                        matrix.setdefault(key, {})
                    else:
                        raise ValueError(f"unknown record type {rec['type']!r}")
                except (ValueError, KeyError, TypeError) as exc:
                    raise UsageError(f"{path}:{lineno}: malformed report record ({exc})") from None
    return matrix


def format_table(matrix) -> str:
    """Triples as rows (any failure first), checks as columns in registry order."""
    if not matrix:
        return ""
    known = [c for c in CHECK_IDS if any(c in row for row in matrix.values())]
    extra = sorted({c for row in matrix.values() for c in row} - set(CHECK_IDS))
    cols = known + extra
    rows = sorted(matrix.items(), key=lambda kv: ("fail" not in kv[1].values(), kv[0]))
    lines = ["triple(s,k,n)\t" + "\t".join(cols)]
    for (s, k, n), row in rows:
        lines.append(f"({s},{k},{n})\t" + "\t".join(STATUS_MARK.get(row.get(c), "-") for c in cols))
    return "\n".join(lines)


def cmd_report(args) -> int:
    matrix = load_reports(args.inputs)
    table = format_table(matrix)
    if table:
        print(table)
    failed = any("fail" in row.values() for row in matrix.values())
    return EXIT_FAIL if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="skl", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run theorem checks over a parameter sweep")
    v.add_argument("--s", required=True, help="stability values, e.g. 2..4")
    v.add_argument("--k", required=True, help="subset sizes, e.g. 2..3")
    v.add_argument("--n", help="explicit ground-set sizes")
    v.add_argument("--n-offset", help="offsets d with n = s*k + d")
    v.add_argument("--suite", action="append",
                   help=f"one of {', '.join(SUITES)}, all (repeatable or comma separated)")
    v.add_argument("--max-vertices", type=int, default=DEFAULT_MAX_VERTICES)
    v.add_argument("--node-budget", type=int, default=None,
                   help="search node budget (default: $SKL_NODE_BUDGET or 10^7)")
    v.add_argument("--color-budget", type=int, default=DEFAULT_COLOR_BUDGET,
                   help="node budget for exact chromatic number")
    v.add_argument("--jobs", type=int, default=1, help="worker processes")
    v.add_argument("--json", action="store_true", help="emit JSON lines")
    v.add_argument("--out", help="write JSON lines to this file")
    v.add_argument("--timings", action="store_true",
                   help="add elapsed seconds to records (breaks byte-identical reruns)")
    v.set_defaults(func=cmd_verify)

    e = sub.add_parser("export", help="write KG(n,k)_s-stab or G(n,k,s) as graph6/DIMACS")
    e.add_argument("--n", type=int, required=True)
    e.add_argument("--k", type=int, required=True)
    e.add_argument("--s", type=int, required=True)
    e.add_argument("--which", choices=("kg", "g"), default="kg")
    e.add_argument("--format", choices=("graph6", "dimacs"), default="graph6")
    e.add_argument("--out", help="output path ('-' or omitted: stdout)")
    e.set_defaults(func=cmd_export)

    r = sub.add_parser("report", help="summarize JSON-lines reports as a pass/fail matrix")
    r.add_argument("inputs", nargs="*")
    r.set_defaults(func=cmd_report)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if getattr(args, "node_budget", 0) is None:
        args.node_budget = default_node_budget()
    try:
        return args.func(args)
    except (UsageError, ParameterError, ValueError) as exc:
        print(f"skl: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"skl: I/O error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
