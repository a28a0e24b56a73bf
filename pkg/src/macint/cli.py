"""Command-line front end.

    macint eval     --expr TEXT --at X [--p 6] [--q 10]
    macint definite --expr TEXT --from A --to B [--p 6] [--q 10]
    macint trace    --expr TEXT --from A --to B --p-max P [--q 10] [--out F]
    macint curve    --expr TEXT --from A --to B [--p 6] [--q 10] [--out F]
    macint check    --expr TEXT [--grid 101]
    macint compare  --expr TEXT --from A --to B [--p 6] [--q 10] [--tol 1e-8]
    macint table    [--out F]

Reals accept fractions such as ``1/2``.  CSV fields carry full round-trip
precision except in ``table``, which rounds to 4 decimals like the
published table.
"""

from __future__ import annotations

import argparse
import csv
import io
import sys
from decimal import ROUND_HALF_EVEN, Decimal
from fractions import Fraction

from .engine import (
    DEFAULT_P, DEFAULT_Q, TruncationParams, antiderivative_at, check_conditions,
    definite, partial_sum_trace,
)
from .errors import MacintError
from .expr import evaluate, parse
from .oracle import quad

CURVE_POINTS = 513
TABLE_EXPR = "x^5/(x^7+1)"
TABLE_INTERVAL = (0.5, 1.5)
TABLE_P_MAX = 6
TABLE_Q = 10


def real(text: str) -> float:
    """Parse a real given as a decimal or a fraction like ``3/2``."""
    try:
        return float(Fraction(text.strip()))
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a real number: {text!r}") from None


def round4(value: float) -> str:
    return str(Decimal(value).quantize(Decimal("0.0001"), rounding=ROUND_HALF_EVEN))


def _csv(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _params(args):
    return TruncationParams(args.p, args.q)


def _cmd_eval(args):
    report = antiderivative_at(parse(args.expr), args.at, _params(args))
    if args.format == "csv":
        return _csv(["x", "value", "tail_estimate"],
                    [[repr(report.x), repr(report.value), repr(report.tail_estimate)]])
    return f"{report.value:.9f}\ntail_estimate {report.tail_estimate:.3e}\n"


def _cmd_definite(args):
    value = definite(parse(args.expr), args.a, args.b, _params(args))
    if args.format == "csv":
        return _csv(["from", "to", "value"], [[repr(args.a), repr(args.b), repr(value)]])
    return f"{value:.9f}\n"


def _cmd_trace(args):
    rows = partial_sum_trace(parse(args.expr), args.a, args.b, args.p_max, args.q)
    return _csv(["p", "value"], [[p, repr(v)] for p, v in rows])


def _cmd_curve(args):
    f = parse(args.expr)
    params = _params(args)
    n = CURVE_POINTS - 1
    rows = []
    for i in range(CURVE_POINTS):
        x = args.a + (args.b - args.a) * i / n
        rows.append([repr(x), repr(evaluate(f, x)), repr(antiderivative_at(f, x, params).value)])
    return _csv(["x", "f", "M"], rows)


def _cmd_check(args):
    report = check_conditions(parse(args.expr), args.grid)
    lines = []
    for label, ok, witnesses in (
        ("defined", report.defined_ok, report.defined_witnesses),
        ("continuous", report.continuous_ok, report.continuous_witnesses),
        ("smooth", report.smooth_ok, report.smooth_witnesses),
    ):
        line = f"{label:<11}{'ok' if ok else 'FAIL'}"
        if witnesses:
            line += "  at x = " + ", ".join(f"{w:.6g}" for w in witnesses[:5])
            if len(witnesses) > 5:
                line += f", ... ({len(witnesses)} points)"
        lines.append(line)
    lines.append(f"(sampled on {args.grid} interior points of (0, 2); heuristic)")
    return "\n".join(lines) + "\n"


def _cmd_compare(args):
    f = parse(args.expr)
    formula = definite(f, args.a, args.b, _params(args))
    oracle = quad(f, args.a, args.b, args.tol)
    diff = abs(formula - oracle.value)
    if args.format == "csv":
        return _csv(["formula", "oracle", "oracle_error", "difference"],
                    [[repr(formula), repr(oracle.value), repr(oracle.abs_error_estimate),
                      repr(diff)]])
    return (
        f"formula     {formula:.9f}\n"
        f"oracle      {oracle.value:.9f}  (error estimate {oracle.abs_error_estimate:.1e})\n"
        f"difference  {diff:.9f}\n"
    )


def _cmd_table(args):
    rows = partial_sum_trace(TABLE_EXPR, *TABLE_INTERVAL, TABLE_P_MAX, TABLE_Q)
    return _csv(["p", "value"], [[p, round4(v)] for p, v in rows])


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="macint",
        description="Antiderivatives on (0, 2) by the Maclaurin Integration series.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def command(name, func, help, *, interval=False, truncation=True, fmt=False, out=False):
        p = sub.add_parser(name, help=help)
        p.set_defaults(func=func)
        if name != "table":
            p.add_argument("--expr", required=True, help="integrand in x")
        if interval:
            p.add_argument("--from", dest="a", type=real, required=True)
            p.add_argument("--to", dest="b", type=real, required=True)
        if truncation:
            if name != "trace":
                p.add_argument("--p", type=int, default=DEFAULT_P,
                               help="outer truncation, highest derivative order")
            p.add_argument("--q", type=int, default=DEFAULT_Q,
                           help="inner truncation, highest series index")
        if fmt:
            p.add_argument("--format", choices=("plain", "csv"), default="plain")
        if out:
            p.add_argument("--out", help="write CSV here instead of standard output")
        return p

    p = command("eval", _cmd_eval, "evaluate M(x; p, q) at one point", fmt=True)
    p.add_argument("--at", type=real, required=True)
    command("definite", _cmd_definite, "M(to) - M(from)", interval=True, fmt=True)
    p = command("trace", _cmd_trace, "CSV of M(to) - M(from) for p = 0..p-max",
                interval=True, out=True)
    p.add_argument("--p-max", dest="p_max", type=int, required=True)
    command("curve", _cmd_curve, f"CSV of f and M on {CURVE_POINTS} points",
            interval=True, out=True)
    p = command("check", _cmd_check, "sample the validity conditions", truncation=False)
    p.add_argument("--grid", type=int, default=101)
    p = command("compare", _cmd_compare, "formula against adaptive quadrature",
                interval=True, fmt=True)
    p.add_argument("--tol", type=float, default=1e-8)
    command("table", _cmd_table, "reproduce the p = 0..6 table for x^5/(x^7+1)",
            truncation=False, out=True)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        text = args.func(args)
    except (MacintError, ValueError) as exc:
        print(f"macint: error: {exc}", file=sys.stderr)
        return 1
    out = getattr(args, "out", None)
    if out:
        with open(out, "w", newline="", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
