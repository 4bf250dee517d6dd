"""Command-line interface: ``pretzelalex {compute,verify,search,knotinfo}``.

Exit codes: 0 success, 1 verification mismatch, 2 usage error, 3 unsupported input.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
import time
from typing import Optional

from . import closedform as cf
from .closedform import LinkOrientation, PretzelKind, PretzelSpec
from .errors import PolySyntaxError, PretzelError, UnsupportedLink, VerificationFailed
from .laurent import LaurentPoly, format_poly, parse
from .oracle import oracle_alexander
from .search import (
    DEFAULT_ORACLE_LIMIT,
    SearchQuery,
    iter_search,
    solutions_to_csv,
    solutions_to_json,
    verify_solution,
)

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_UNSUPPORTED = 0, 1, 2, 3


class _UsageError(Exception):
    pass


def _parse_orientation(text):
    if text is None:
        return None
    try:
        return LinkOrientation.parse(text)
    except ValueError as exc:
        raise _UsageError(str(exc)) from None


def _poly_json(p: LaurentPoly) -> dict:
    return {"terms": [[e2, str(c)] for e2, c in sorted(p.doubled_terms.items())]}


# -- compute --------------------------------------------------------------


def cmd_compute(args, out) -> int:
    try:
        spec = PretzelSpec.parse(args.pretzel)
    except PretzelError as exc:
        raise _UsageError(str(exc)) from None
    orientation = _parse_orientation(args.orientation)
    cls = cf.classify(spec)
    if cls.kind is PretzelKind.UNSUPPORTED:
        raise UnsupportedLink(f"{spec} has more than one even parameter")
    if cls.kind is PretzelKind.ODD_LINK and orientation is None:
        raise _UsageError(f"{spec} is a two-component link; pass --orientation co|anti")
    if cls.is_knot:
        orientation = None
    if args.symmetrized and not cls.is_knot:
        raise _UsageError("--symmetrized applies to knots only")

    closed = matrix = None
    if args.method in ("closed", "both"):
        closed = cf.alexander(spec, orientation)
    if args.method in ("matrix", "both"):
        matrix = oracle_alexander(spec, orientation, reduced=not args.wirtinger)
    mismatch = closed is not None and matrix is not None and closed != matrix
    value = closed if closed is not None else matrix

    poly = cf.symmetrize(value.representative) if args.symmetrized else value.representative
    span = value.representative.span_degree() if not value.is_zero() else None
    result = {"pretzel": str(spec), "class": cls.kind.value}
    if orientation is not None:
        result["orientation"] = orientation.value
    result["alexander"] = _poly_json(poly)
    if cls.is_knot:
        result["determinant"] = cf.determinant(spec)
    result["degree_span"] = span
    if cls.kind is PretzelKind.ODD_KNOT:
        result["trivial"] = cf.is_trivial_alexander(spec.q)
    elif cls.is_knot:
        result["trivial"] = value.is_one()

    if args.format == "json":
        if mismatch:
            result["matrix_alexander"] = _poly_json(matrix.representative)
        print(json.dumps(result), file=out)
    else:
        print(f"pretzel: {spec}", file=out)
        print(f"class: {cls.kind.value}", file=out)
        if orientation is not None:
            print(f"orientation: {orientation.value}", file=out)
        print(f"alexander: {format_poly(poly)}", file=out)
        if "determinant" in result:
            print(f"determinant: {result['determinant']}", file=out)
        print(f"degree_span: {span}", file=out)
        if "trivial" in result:
            print(f"trivial: {str(result['trivial']).lower()}", file=out)
        if mismatch:
            print(f"MISMATCH: matrix oracle gives {format_poly(matrix.representative)}", file=out)
    return EXIT_MISMATCH if mismatch else EXIT_OK


# -- verify ---------------------------------------------------------------


def cmd_verify(args, out) -> int:
    from .checks import run_verify

    if args.n_max < 1 or args.q_max < 1 or args.samples < 1:
        raise _UsageError("--n-max, --q-max and --samples must be positive")
    reports = run_verify(args.n_max, args.q_max, args.samples, args.seed,
                         progress=lambda r: print(r.line(), file=out, flush=True))
    passed = sum(r.passed for r in reports)
    failed = sum(r.failed for r in reports)
    bad = [r for r in reports if not r.ok]
    print(f"total: {passed} passed, {failed} failed in {len(reports)} suites", file=out)
    if bad:
        print(f"first counterexample: {bad[0].name}: {bad[0].first_failure}", file=out)
        return EXIT_MISMATCH
    return EXIT_OK


# -- search ---------------------------------------------------------------


def cmd_search(args, out) -> int:
    if args.n < 1 or args.n % 2 == 0:
        raise _UsageError(f"--n must be a positive odd integer, got {args.n}")
    if args.bound < 1 or args.jobs < 1:
        raise _UsageError("--bound and --jobs must be positive")
    query = SearchQuery(args.n, args.bound, args.nontrivial, args.jobs)
    start = time.monotonic()
    found = []
    failures = 0
    header_done = False
    for _, sols in iter_search(query, args.checkpoint):
        for q in sols:
            try:
                sol = verify_solution(q, args.oracle_limit)
            except VerificationFailed as exc:
                failures += 1
                print(f"# verification failed for {q}: {exc}", file=sys.stderr)
                continue
            found.append(sol)
            if args.output == "csv":
                text = solutions_to_csv([sol], args.n, args.bound)
                if header_done:
                    text = text.split("\n", 1)[1]
                header_done = True
                out.write(text)
                out.flush()
    if args.output == "json":
        print(solutions_to_json(found, args.n, args.bound), file=out)
    elif not header_done:
        out.write(solutions_to_csv([], args.n, args.bound))
    elapsed = time.monotonic() - start
    n_matrix = sum(1 for s in found if s.verified_matrix)
    print(f"# summary: n={args.n} bound={args.bound} solutions={len(found)} "
          f"matrix_verified={n_matrix} failed={failures} elapsed={elapsed:.1f}s",
          file=sys.stderr)
    return EXIT_MISMATCH if failures else EXIT_OK


# -- knotinfo -------------------------------------------------------------


def _compare_row(spec: PretzelSpec, expected: LaurentPoly, orientation):
    """Return (matched, detail) for one table row."""
    cls = cf.classify(spec)
    if cls.kind is PretzelKind.ODD_LINK and orientation is None:
        choices = list(LinkOrientation)
    else:
        choices = [orientation if cls.kind is PretzelKind.ODD_LINK else None]
    want = {expected.canonicalize(), expected.substitute_inverse().canonicalize()}
    got = []
    for o in choices:
        value = cf.alexander(spec, o)
        if value in want:
            return True, o
        got.append(value)
    return False, got[0]


def cmd_knotinfo(args, out) -> int:
    try:
        fh = open(args.csv, newline="")
    except OSError as exc:
        raise _UsageError(f"cannot read {args.csv}: {exc}") from None
    matched = mismatched = errors = skipped = 0
    with fh:
        reader = csv.DictReader(fh)
        need = {"name", "pretzel_notation", "alexander_polynomial"}
        if not reader.fieldnames or not need <= set(reader.fieldnames):
            raise _UsageError(f"CSV header must contain {', '.join(sorted(need))}")
        for line, row in enumerate(reader, start=2):
            name = row["name"]
            try:
                spec = PretzelSpec.parse(row["pretzel_notation"])
                expected = parse(row["alexander_polynomial"])
                orientation = _parse_orientation(row.get("orientation") or None)
            except (PretzelError, PolySyntaxError, _UsageError) as exc:
                errors += 1
                print(f"line {line} {name}: ERROR {exc}", file=out)
                continue
            try:
                ok, detail = _compare_row(spec, expected, orientation)
            except UnsupportedLink:
                skipped += 1
                print(f"line {line} {name}: SKIP unsupported {spec}", file=out)
                continue
            if ok:
                matched += 1
                extra = f" ({detail.value})" if detail else ""
                print(f"line {line} {name}: match{extra}", file=out)
            else:
                mismatched += 1
                print(f"line {line} {name}: MISMATCH {spec} gives "
                      f"{format_poly(detail.representative)}", file=out)
    print(f"summary: {matched} matched, {mismatched} mismatched, "
          f"{errors} unparsable, {skipped} unsupported", file=out)
    if mismatched:
        return EXIT_MISMATCH
    return EXIT_USAGE if errors else EXIT_OK


# -- entry point ------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="pretzelalex",
                                description="Alexander polynomials of pretzel knots and links")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("compute", help="Alexander polynomial of one pretzel link")
    c.add_argument("--pretzel", required=True, help="twist parameters, e.g. -2,3,7 or P(-2,3,7)")
    c.add_argument("--orientation", help="co|anti, required for two-component links")
    c.add_argument("--method", choices=["closed", "matrix", "both"], default="closed")
    c.add_argument("--wirtinger", action="store_true",
                   help="use the full crossing matrix instead of the reduced region system")
    c.add_argument("--format", choices=["text", "json"], default="text")
    c.add_argument("--symmetrized", action="store_true")
    c.set_defaults(func=cmd_compute)

    v = sub.add_parser("verify", help="closed form vs matrix oracle grid plus property suites")
    v.add_argument("--n-max", type=int, default=5)
    v.add_argument("--q-max", type=int, default=5)
    v.add_argument("--samples", type=int, default=200)
    v.add_argument("--seed", type=int, default=0)
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("search", help="all-odd knots with trivial Alexander polynomial")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--bound", type=int, required=True)
    s.add_argument("--nontrivial", action="store_true",
                   help="drop tuples containing both 1 and -1")
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--output", choices=["csv", "json"], default="csv")
    s.add_argument("--checkpoint", help="file of completed smallest entries, for resuming")
    s.add_argument("--oracle-limit", type=int, default=DEFAULT_ORACLE_LIMIT,
                   help="run the diagram oracle when the crossing count is at most this")
    s.set_defaults(func=cmd_search)

    k = sub.add_parser("knotinfo", help="compare against a table export")
    k.add_argument("--csv", required=True)
    k.set_defaults(func=cmd_knotinfo)
    return p


def _glue_negative_values(argv):
    """``--pretzel -3,5,7`` would read as an option; rewrite as ``--pretzel=-3,5,7``."""
    out = []
    it = iter(argv)
    for a in it:
        if a == "--pretzel":
            nxt = next(it, None)
            if nxt is not None:
                out.append(f"--pretzel={nxt}")
                continue
        out.append(a)
    return out


def main(argv: Optional[list] = None, out=None) -> int:
    out = out or sys.stdout
    argv = _glue_negative_values(sys.argv[1:] if argv is None else list(argv))
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args, out)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except UnsupportedLink as exc:
        print(f"unsupported: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except PretzelError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
