"""Command-line driver.

Exit codes: 0 ok, 1 check/verification failed, 2 input error,
3 not solvable, 4 singular.
"""

from __future__ import annotations

import argparse
import sys
from decimal import ROUND_HALF_UP, Decimal
from pathlib import Path

import numpy as np

from .errors import CapExceeded, InputError, MissingData, NotSolvable, Singular
from .io import format_layer_csv, load_document
from .oracle import oracle_solve
from .solvability import check_solvability
from .sweep import residual, residual_tolerance, solve_at_point, sweep

EXIT_OK, EXIT_FAILED, EXIT_INPUT, EXIT_NOT_SOLVABLE, EXIT_SINGULAR = 0, 1, 2, 3, 4


def format_value(value: float, precision: int = 4) -> str:
    """Round half away from zero on the exact binary value."""
    d = Decimal(value).quantize(Decimal(1).scaleb(-precision), rounding=ROUND_HALF_UP)
    if d == 0:
        d = abs(d)
    return str(d) if precision > 0 else str(d.to_integral_value())


def _verify(problem, force: bool, out) -> bool:
    field = sweep(problem, force=force)
    try:
        ref = oracle_solve(problem)
    except CapExceeded as exc:
        print(f"verify: {exc}", file=sys.stderr)
        return False
    disc = float(np.abs(field.values - ref.values).max())
    disc_tol = 1e-9 * (1.0 + float(np.abs(field.values).max()))
    res = residual(problem, field)
    res_tol = residual_tolerance(problem, field)
    print(f"oracle discrepancy = {disc:.3e} (tolerance {disc_tol:.3e})", file=out)
    print(f"residual = {res:.3e} (tolerance {res_tol:.3e})", file=out)
    return disc <= disc_tol and res <= res_tol


def _cmd_solve(args, out) -> int:
    doc = load_document(args.file)
    result = solve_at_point(doc.problem, doc.target, force=args.force)
    x, y, z = doc.target
    print(f"f({x},{y},{z}) = {format_value(result.value_at_A, args.precision)}", file=out)
    if args.verify and not _verify(doc.problem, args.force, out):
        return EXIT_FAILED
    return EXIT_OK


def _cmd_check(args, out) -> int:
    doc = load_document(args.file)
    p = doc.problem
    r = check_solvability(p.stencil, p.apex)
    print(f"apex = ({p.apex.x_beta},{p.apex.y_beta},{p.stencil.m})", file=out)
    print(f"apex magnitude = {r.apex_magnitude:g}", file=out)
    print(f"competitor sum = {r.competitor_sum:g}", file=out)
    print(f"margin = {r.margin:g}", file=out)
    print(f"verdict: {'SOLVABLE' if r.satisfied else 'NOT SOLVABLE'}", file=out)
    return EXIT_OK if r.satisfied else EXIT_FAILED


def _cmd_dump(args, out) -> int:
    doc = load_document(args.file)
    p = doc.problem
    field = sweep(p, force=args.force)
    outdir = Path(args.out_dir)
    outdir.mkdir(parents=True, exist_ok=True)
    for k in range(p.stencil.m, p.domain.z_max + 1):
        path = outdir / f"layer_{k}.csv"
        path.write_text(format_layer_csv(field, k), encoding="utf-8")
        print(path, file=out)
    if args.verify and not _verify(p, args.force, out):
        return EXIT_FAILED
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("file", help="problem document (JSON)")
    common.add_argument("--force", action="store_true",
                        help="solve even if the sufficient solvability condition fails")
    common.add_argument("--verify", action="store_true",
                        help="cross-check against the global brute-force solve")
    common.add_argument("--precision", type=int, default=4, metavar="K",
                        help="decimals in printed values (default: 4)")

    parser = argparse.ArgumentParser(
        prog="cauchy3d",
        description="Cauchy problem for 3-d constant-coefficient difference equations.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("solve", parents=[common], help="print f at the target point").set_defaults(
        func=_cmd_solve)
    sub.add_parser("check", parents=[common], help="report the solvability condition").set_defaults(
        func=_cmd_check)
    dump = sub.add_parser("dump-layers", parents=[common], help="write solved layers as CSV")
    dump.add_argument("-o", "--out-dir", default=".", help="output directory (default: .)")
    dump.set_defaults(func=_cmd_dump)
    return parser


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    args = build_parser().parse_args(argv)
    if args.precision < 0:
        print("error: --precision must be nonnegative", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args, out)
    except (InputError, MissingData, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except NotSolvable as exc:
        print(f"not solvable: {exc}", file=sys.stderr)
        return EXIT_NOT_SOLVABLE
    except Singular as exc:
        print(f"singular: {exc}", file=sys.stderr)
        return EXIT_SINGULAR


run_cli = main
