"""Command-line front end.

    llseries gen    --d 4 --r 1 --b 0,2 --bp 0,2 [--monomial] [--seed N] --out inst.json
    llseries check  --instance inst.json [--grid grid.json] [--format json|csv]
    llseries build  --instance inst.json [--seed N] --out grid.json [--trace trace.jsonl]
    llseries unique --instance inst.json [--trials 10] [--seed N]
    llseries grid   --instance inst.json [--format csv|json]

Exit status: 0 when every check passes, 1 on a mathematical check failure,
2 on bad input.  Randomness comes only from --seed; environment variables
are not read.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from .curve import CurveError
from .extension import (
    ChoiceStrategy,
    ExtensionError,
    ExtensionGrid,
    build_extension,
    replay_extension,
    verify_exact,
    verify_extends,
)
from .field import FieldError, parse_field
from .instances import SequenceSpec, monomial_instance, random_refined, validate
from .kernels import KernelGrid, SeriesError, check_all, interval_index
from .linalg import LinalgError
from .report import Report
from .serialize import (
    dumps,
    grid_cells_from_json,
    grid_to_json,
    instance_from_json,
    instance_to_json,
    trace_lines,
)
from .uniqueness import (
    UniquenessError,
    check_twisted_orders,
    check_vanishes_on_x2,
    check_top_order_at_b,
    decide_unique,
    region,
)

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _ints(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError as exc:
        raise InputError("expected a comma-separated list of integers, got %r" % text) from exc


def _emit(text: str, out: str | None):
    if out:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError("cannot read %s: %s" % (path, exc.strerror)) from exc
    except json.JSONDecodeError as exc:
        raise InputError("%s is not valid JSON: %s" % (path, exc)) from exc


def _load_instance(args):
    if not args.instance:
        raise InputError("--instance is required")
    field = parse_field(args.field) if args.field else None
    h = instance_from_json(_load_json(args.instance), field)
    report = validate(h)
    if not report.ok:
        names = sorted({r.check for r in report.failures()})
        raise InputError("instance fails validation: %s" % ", ".join(names))
    return h


def _summary_line(h) -> str:
    return "d=%d r=%d a=%s b=%s b'=%s c=%s" % (h.d, h.r, list(h.a), list(h.b), list(h.bp), list(h.c))


def _report_text(report: Report, fmt: str) -> str:
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["check", "i", "l", "pass"])
        for r in report:
            i, l = r.point if r.point is not None else ("", "")
            w.writerow([r.check, i, l, int(r.passed)])
        return buf.getvalue()
    return dumps({"ok": report.ok, "summary": report.summary(), "results": report.to_json()})


def cmd_gen(args) -> int:
    field = parse_field(args.field or "rational")
    if args.d is None or args.r is None or args.b is None:
        raise InputError("gen needs --d, --r and --b")
    b = _ints(args.b)
    if args.monomial:
        h = monomial_instance(args.d, b, field)
        if h.r != args.r:
            raise InputError("--r %d does not match %d exponents" % (args.r, len(b)))
        if args.bp is not None and _ints(args.bp) != h.bp:
            raise InputError("monomial instance has b' = %s, not %s" % (list(h.bp), args.bp))
    else:
        if args.bp is None:
            raise InputError("gen needs --bp unless --monomial is given")
        spec = SequenceSpec(args.d, args.r, b, _ints(args.bp))
        if args.pairing == "auto":
            pairing = None
        elif args.pairing == "reversed":
            pairing = "reversed"
        else:
            pairing = _ints(args.pairing)
        h = random_refined(spec, args.seed, field, pairing=pairing)
    report = validate(h)
    if not report.ok:
        raise InputError("generated instance fails validation")
    _emit(dumps(instance_to_json(h)), args.out)
    print(_summary_line(h), file=sys.stdout if args.out else sys.stderr)
    return EXIT_OK


def cmd_check(args) -> int:
    h = _load_instance(args)
    kgrid = KernelGrid(h)
    report = check_all(kgrid)
    if args.grid:
        cells = grid_cells_from_json(_load_json(args.grid), h)
        missing = [key for key in h.curve.points() if key not in cells]
        if missing:
            raise InputError("grid file lacks cells %s" % missing[:3])
        grid = ExtensionGrid(h, cells, [])
        report.extend(verify_exact(grid, kgrid))
        report.add("extends", None, verify_extends(grid))
        try:
            replay_extension(grid, h, kgrid)
            report.add("replay", None, True)
        except ExtensionError as exc:
            report.add("replay", None, False, error=str(exc))
    _emit(_report_text(report, args.format), args.out)
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_build(args) -> int:
    h = _load_instance(args)
    strategy = ChoiceStrategy.deterministic() if args.seed is None else ChoiceStrategy.seeded(args.seed)
    kgrid = KernelGrid(h)
    try:
        grid = build_extension(h, strategy, kgrid)
    except ExtensionError as exc:
        print("construction failed: %s" % exc, file=sys.stderr)
        return EXIT_FAIL
    report = verify_exact(grid, kgrid)
    report.add("extends", None, verify_extends(grid))
    payload = grid_to_json(grid)
    payload["strategy"] = strategy.to_json()
    _emit(dumps(payload), args.out)
    trace_path = args.trace or (args.out + ".trace.jsonl" if args.out else None)
    if trace_path:
        with open(trace_path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write("".join(line + "\n" for line in trace_lines(grid)))
    status = "exact extension verified" if report.ok else "VERIFICATION FAILED"
    print("%s: %d checks, %d failed" % (status, len(report), len(report.failures())), file=sys.stderr)
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_unique(args) -> int:
    h = _load_instance(args)
    kgrid = KernelGrid(h)
    seed = 0 if args.seed is None else args.seed
    try:
        verdict = decide_unique(h, args.trials, seed, kgrid)
    except UniquenessError as exc:
        print("inconsistent evidence: %s" % exc, file=sys.stderr)
        return EXIT_FAIL
    payload = verdict.to_json()
    ok = True
    if verdict.unique:
        consistency = Report()
        consistency.extend(check_vanishes_on_x2(h, build_extension(h, kgrid=kgrid)))
        consistency.extend(check_twisted_orders(h))
        consistency.extend(check_top_order_at_b(h, kgrid))
        payload["consistency"] = consistency.summary()
        ok = consistency.ok
    _emit(dumps(payload), args.out)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_grid(args) -> int:
    h = _load_instance(args)
    kgrid = KernelGrid(h)
    members = {p[:2] for p in region(h)}
    rows = []
    for i, l in h.curve.points():
        j, k = interval_index(h.b, i), interval_index(h.bp, l)
        rows.append((i, l, kgrid.dim(i, l), j, k, (i, l) in members))
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["i", "l", "dimK", "j", "k", "in_region"])
        for i, l, n, j, k, inr in rows:
            w.writerow([i, l, n, "" if j is None else j, "" if k is None else k, int(inr)])
        _emit(buf.getvalue(), args.out)
    else:
        table = [{"i": i, "l": l, "dimK": n, "j": j, "k": k, "in_region": inr} for i, l, n, j, k, inr in rows]
        _emit(dumps({"d": h.d, "r": h.r, "b": list(h.b), "bp": list(h.bp), "cells": table}), args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--instance", help="instance JSON file")
    common.add_argument("--seed", type=int, default=None, help="seed for every random choice")
    common.add_argument("--trials", type=int, default=10, help="seeded builds in the uniqueness sweep")
    common.add_argument("--field", default=None, help="rational or prime:P")
    common.add_argument("--format", choices=("json", "csv"), default=None)
    common.add_argument("--out", default=None, help="output file (default stdout)")

    parser = argparse.ArgumentParser(prog="llseries", description="Exact extensions of refined series on a three-component chain.")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", parents=[common], help="write a refined instance")
    gen.add_argument("--d", type=int)
    gen.add_argument("--r", type=int)
    gen.add_argument("--b", help="orders of V_X2 at A, e.g. 0,2")
    gen.add_argument("--bp", help="orders of V_X2 at B, e.g. 0,2")
    gen.add_argument("--monomial", action="store_true", help="V_X2 spanned by t^b_j")
    gen.add_argument("--pairing", default="auto",
                     help="auto, reversed, or a permutation such as 0,1 matching b_j with b'_sigma(j)")

    check = sub.add_parser("check", parents=[common], help="run every kernel-space predicate")
    check.add_argument("--grid", help="also verify this grid file")
    build = sub.add_parser("build", parents=[common], help="construct an exact extension")
    build.add_argument("--trace", help="trace file (default: <out>.trace.jsonl)")
    sub.add_parser("unique", parents=[common], help="decide uniqueness of the exact extension")
    sub.add_parser("grid", parents=[common], help="table of dim K_il")
    return parser


COMMANDS = {"gen": cmd_gen, "check": cmd_check, "build": cmd_build, "unique": cmd_unique, "grid": cmd_grid}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    if args.format is None:
        args.format = "csv" if args.command == "grid" else "json"
    if args.command == "gen" and args.seed is None:
        args.seed = 0
    if args.trials < 1:
        print("error: --trials must be positive", file=sys.stderr)
        return EXIT_INPUT
    try:
        return COMMANDS[args.command](args)
    except (InputError, SeriesError, FieldError, CurveError, LinalgError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
