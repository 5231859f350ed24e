"""Command-line surface: every library operation behind one `mordell` entry point.

Data goes to stdout, diagnostics to stderr; the exit code is 0 exactly when
nothing failed.  Pretty output rounds logs to 3 decimals; csv/json carry full
double precision.  Point literals are exact rationals like "(-11/9, 98/27)";
decimal or scientific notation is rejected, nothing here ever rounds inputs.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from fractions import Fraction

from mordell.arith import (
    DEFAULT_BUDGET,
    FactorBudget,
    UnresolvedFactorization,
    factor,
    perfect_powers,
    power_gap_pairs,
)
from mordell.curve import INFINITY, Curve, Point
from mordell.points import canonical_shape, log_distance, point_length
from mordell.search import (
    find_generators,
    gm_hypotheses_check,
    hall_ratio,
    hall_scan,
    integral_points_mordell,
    lattice_length_search,
)

_RATIONAL_RE = re.compile(r"^[+-]?\d+(?:/\d+)?$")


class UsageError(ValueError):
    pass


def parse_rational(text: str) -> Fraction:
    token = text.strip().replace(" ", "")
    if not _RATIONAL_RE.match(token):
        raise UsageError(
            f"not an exact rational: {text!r} (use integers or num/den; "
            "decimals are not accepted)"
        )
    return Fraction(token)


def parse_point(text: str, allow_x_only: bool = False) -> Point:
    token = text.strip()
    if token.lower() in ("inf", "infinity", "o"):
        return INFINITY
    if token.startswith("(") and token.endswith(")"):
        token = token[1:-1]
    parts = [p for p in token.split(",") if p.strip()]
    if len(parts) == 2:
        return Point.affine(parse_rational(parts[0]), parse_rational(parts[1]))
    if len(parts) == 1 and allow_x_only:
        return Point.affine(parse_rational(parts[0]), 0)
    raise UsageError(f"cannot parse point literal {text!r}; expected \"(x, y)\"")


def parse_curve(text: str) -> Curve:
    token = text.strip()
    if token.startswith("[") and token.endswith("]"):
        token = token[1:-1]
    parts = token.split(",")
    if len(parts) != 5:
        raise UsageError(
            f"cannot parse curve literal {text!r}; expected [a1,a2,a3,a4,a6]"
        )
    try:
        a = [int(p.strip()) for p in parts]
    except ValueError:
        raise UsageError(f"curve coefficients must be integers: {text!r}") from None
    return Curve(*a)


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def _nonneg_int(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {value}")
    return value


def _budget_from(args) -> FactorBudget:
    return FactorBudget(
        trial_bound=args.trial_bound,
        rho_iterations=args.rho_iters,
        mr_rounds=args.mr_rounds,
    )


def _add_budget_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument(
        "--trial-bound", type=_positive_int, default=DEFAULT_BUDGET.trial_bound,
        help="trial-division prime bound (default %(default)s)",
    )
    sub.add_argument(
        "--rho-iters", type=_nonneg_int, default=DEFAULT_BUDGET.rho_iterations,
        help="Pollard-rho iteration cap (default %(default)s)",
    )
    sub.add_argument(
        "--mr-rounds", type=_positive_int, default=DEFAULT_BUDGET.mr_rounds,
        help="Miller-Rabin rounds above the deterministic range (default %(default)s)",
    )


def _add_format_flag(sub: argparse.ArgumentParser) -> None:
    sub.add_argument(
        "--format", choices=("pretty", "csv", "json"), default="pretty",
        help="output format (default %(default)s)",
    )


def cmd_integral(args) -> int:
    solutions = integral_points_mordell(args.d, args.bound)
    if args.format == "csv":
        print("x,y")
        for s in solutions:
            print(f"{s.x},{s.y}")
    elif args.format == "json":
        print(json.dumps([{"x": s.x, "y": s.y} for s in solutions]))
    else:
        if not solutions:
            print(f"no integral solutions of y^2 = x^3 + ({args.d}) with |x| <= {args.bound}")
        for s in solutions:
            y = f"±{s.y}" if s.y else "0"
            print(f"({s.x}, {y})")
    return 0


def cmd_hall(args) -> int:
    if args.pairs is None and args.d is None:
        raise UsageError("hall needs either --pairs FILE or -d with --bound")
    records = []
    if args.pairs is not None:
        for lineno, line in enumerate(open(args.pairs), start=1):
            line = line.split("#")[0].strip()
            if not line or line.lower().startswith("d,"):
                continue
            try:
                d_text, x_text = line.split(",")
                d, x = int(d_text), int(x_text)
            except ValueError:
                raise UsageError(f"{args.pairs}:{lineno}: cannot parse pair {line!r}")
            try:
                records.append(hall_ratio(d, x))
            except ValueError as exc:
                print(f"error: {args.pairs}:{lineno}: {exc}", file=sys.stderr)
                return 1
    else:
        records = hall_scan(args.d, args.bound)
    if args.format == "csv":
        print("d,x,y,log_x,ratio")
        for r in records:
            print(f"{r.d},{r.x},{r.y},{r.log_x!r},{r.ratio!r}")
    elif args.format == "json":
        print(json.dumps(
            [{"d": r.d, "x": r.x, "y": r.y, "log_x": r.log_x, "ratio": r.ratio} for r in records]
        ))
    else:
        print(f"{'d':>12} {'x':>20} {'log x':>10} {'log x / 2 log |d|':>18}")
        for r in records:
            print(f"{r.d:>12} {r.x:>20} {r.log_x:>10.3f} {r.ratio:>18.3f}")
    return 0


def cmd_powers(args) -> int:
    if args.gap is not None:
        pairs = power_gap_pairs(args.limit, args.gap)
        if args.format == "csv":
            print("lower,upper")
            for a, b in pairs:
                print(f"{a},{b}")
        elif args.format == "json":
            print(json.dumps(pairs))
        else:
            for a, b in pairs:
                print(f"({a}, {b})")
        return 0
    entries = perfect_powers(args.limit)
    if args.format == "csv":
        print("value,base,exponent")
        for e in entries:
            print(f"{e.value},{e.base},{e.exponent}")
    elif args.format == "json":
        print(json.dumps(
            [{"value": e.value, "base": e.base, "exponent": e.exponent} for e in entries]
        ))
    else:
        print(", ".join(str(e.value) for e in entries))
    return 0


def cmd_search_length(args) -> int:
    curve = parse_curve(args.curve)
    if args.gen:
        if len(args.gen) != 2:
            raise UsageError("give exactly two --gen points (or none to discover them)")
        p, q = (parse_point(g) for g in args.gen)
    else:
        p, q = find_generators(curve)
        print(f"discovered generators: {p} and {q}", file=sys.stderr)
    reference = parse_point(args.ref)
    report = lattice_length_search(
        curve,
        p,
        q,
        args.range,
        args.k,
        reference=reference,
        budget=_budget_from(args),
        threads=args.threads,
        strict_prime=args.strict_prime,
    )
    if args.format == "csv":
        sys.stdout.write(report.to_csv())
    elif args.format == "json":
        print(report.to_json())
    else:
        s = report.summary()
        print(f"curve {s['curve']}  generators {s['generators'][0]} , {s['generators'][1]}")
        print(f"reference {s['reference']}  k={s['k']}  range={s['range']}")
        print(f"rows {s['rows']}  confirmed {s['confirmed']}  unresolved {s['unresolved']}")
        if report.h_bar is None:
            print("h_bar: no confirmed rows")
        else:
            print(
                "h_bar %.3f at (m, n) = %s   h_E %.3f   ratio %.3f"
                % (report.h_bar, s["h_bar_at"], report.h_e, report.ratio)
            )
    return 0


def cmd_gm_check(args) -> int:
    q1 = parse_point(args.q1)
    q2 = parse_point(args.q2)
    report = gm_hypotheses_check(args.N, q1, q2, args.relation_bound)
    if args.format == "json":
        print(json.dumps({
            "N": report.n,
            "passed": report.passed,
            "checks": [{"name": n, "ok": ok, "detail": d} for n, ok, d in report.checks],
        }))
    else:
        print(report)
        print("PASS" if report.passed else "FAIL")
    return 0 if report.passed else 1


def cmd_factor(args) -> int:
    result = factor(args.n, _budget_from(args))
    if args.format == "json":
        print(json.dumps({
            "n": args.n,
            "sign": result.sign,
            "factors": [[p, e] for p, e in result.factors],
            "cofactor": result.cofactor,
            "cofactor_status": result.cofactor_status,
        }))
    else:
        print(f"{args.n} = {result}")
    return 0


def cmd_shape(args) -> int:
    point = parse_point(args.point)
    shape = canonical_shape(point)
    verdict = point_length(point, _budget_from(args))
    if args.format == "json":
        print(json.dumps({
            "A": shape.a, "B": shape.b, "C": shape.c,
            "length": {"kind": verdict.kind, "count": verdict.count},
        }))
    else:
        print(f"A={shape.a} B={shape.b} C={shape.c} length={verdict}")
    return 0


def cmd_length(args) -> int:
    point = parse_point(args.point)
    verdict = point_length(point, _budget_from(args), k=args.k)
    if args.format == "json":
        print(json.dumps({"kind": verdict.kind, "count": verdict.count}))
    else:
        print(str(verdict))
    return 0


def cmd_distance(args) -> int:
    reference = parse_point(args.ref)
    point = parse_point(args.point, allow_x_only=True)
    value = log_distance(reference, point)
    if args.format == "json":
        print(json.dumps({"h": value}))
    else:
        print(f"{value:.3f}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mordell",
        description="Exact searches on Mordell-type curves: integral points, "
        "Hall ratios, perfect powers, and length-bounded rational point surveys.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    s = sub.add_parser("integral", help="integral points on y^2 = x^3 + d")
    s.add_argument("-d", type=int, required=True, help="the constant d (non-zero)")
    s.add_argument("--bound", type=_positive_int, default=10**4, help="|x| bound (default %(default)s)")
    _add_format_flag(s)
    s.set_defaults(func=cmd_integral)

    s = sub.add_parser("hall", help="Hall ratios log x / (2 log |d|)")
    s.add_argument("--pairs", help="CSV file of d,x pairs to score")
    s.add_argument("-d", type=int, help="scan this d instead of reading pairs")
    s.add_argument("--bound", type=_positive_int, default=10**4, help="x bound for the scan (default %(default)s)")
    _add_format_flag(s)
    s.set_defaults(func=cmd_hall)

    s = sub.add_parser("powers", help="perfect powers and gap pairs")
    s.add_argument("--limit", type=_positive_int, required=True)
    s.add_argument("--gap", type=_nonneg_int, help="list pairs with this exact gap instead")
    _add_format_flag(s)
    s.set_defaults(func=cmd_powers)

    s = sub.add_parser("search-length", help="survey m*P + n*Q for length <= k points")
    s.add_argument("--curve", required=True, help="curve as [a1,a2,a3,a4,a6]")
    s.add_argument("--gen", action="append", help="generator point (give twice; omit to discover)")
    s.add_argument("--range", type=_positive_int, default=30, help="lattice range (default %(default)s)")
    s.add_argument("-k", type=_nonneg_int, default=1, help="length bound (default %(default)s)")
    s.add_argument("--ref", default="inf", help='reference point: inf or "(x, y)" (default inf)')
    s.add_argument("--strict-prime", action="store_true",
                   help="count length-1 rows only when B is literally prime")
    s.add_argument("--threads", type=_positive_int, default=os.cpu_count() or 1,
                   help="row-level parallelism (default: machine parallelism)")
    _add_budget_flags(s)
    _add_format_flag(s)
    s.set_defaults(func=cmd_search_length)

    s = sub.add_parser("gm-check", help="generator-pair hypotheses on y^2 = x^3 - N*x")
    s.add_argument("-N", type=_positive_int, required=True)
    s.add_argument("--q1", required=True, help='first point, e.g. "(-9, 9)"')
    s.add_argument("--q2", required=True, help='second point, e.g. "(49/4, -217/8)"')
    s.add_argument("--relation-bound", type=_positive_int, default=12)
    _add_format_flag(s)
    s.set_defaults(func=cmd_gm_check)

    s = sub.add_parser("factor", help="factor an integer within a budget")
    s.add_argument("n", type=int)
    _add_budget_flags(s)
    _add_format_flag(s)
    s.set_defaults(func=cmd_factor)

    s = sub.add_parser("shape", help="(A, B, C) decomposition of a rational point")
    s.add_argument("point", help='point literal "(x, y)"')
    _add_budget_flags(s)
    _add_format_flag(s)
    s.set_defaults(func=cmd_shape)

    s = sub.add_parser("length", help="number of distinct primes dividing B")
    s.add_argument("point", help='point literal "(x, y)"')
    s.add_argument("-k", type=_nonneg_int, default=None, help="stop once the verdict against k is decided")
    _add_budget_flags(s)
    _add_format_flag(s)
    s.set_defaults(func=cmd_length)

    s = sub.add_parser("distance", help="logarithmic distance h_ref(P)")
    s.add_argument("--ref", default="inf", help='reference: inf or a point literal')
    s.add_argument("point", help='point literal "(x, y)" or "(x)"')
    _add_format_flag(s)
    s.set_defaults(func=cmd_distance)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, UnresolvedFactorization, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
