"""Command-line front end.

Every subcommand reads its inputs from flags (no environment variables, no
config files), formats floating-point output to 12 significant digits, and
produces byte-identical output for identical configurations regardless of
the worker count.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import st_approx, sympow
from .curves import kind_to_string, load_curves
from .errors import ConfigError, ExtremalPrimesError
from .prime_scan import predict_extremal, report_to_csv, report_to_json, scan, st_histogram
from .st_approx import Interval, coefficient_bounds_report, majorant, minorant, sandwich_margins
from .sympow import conductor_exponent, lambda_sym_bad, local_data, smoothed_sum


def _f12(x: float) -> float:
    return float(f"{x:.12g}")


def _round_floats(obj):
    if isinstance(obj, float):
        return _f12(obj)
    if isinstance(obj, dict):
        return {k: _round_floats(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round_floats(v) for v in obj]
    return obj


def _emit_json(obj, stream=None) -> None:
    print(json.dumps(_round_floats(obj)), file=stream or sys.stdout)


def _cmd_scan(args) -> int:
    curves = load_curves(args.curves)
    if args.format == "csv" and len(curves) != 1:
        raise ConfigError("csv output needs a one-curve file; use --format json for several curves")
    keep = args.records or args.format == "csv"
    with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
        for E in curves:
            report = scan(E, args.lo, args.hi, keep_records=keep, workers=args.threads)
            if args.format == "csv":
                fh.write(report_to_csv(report))
            else:
                fh.write(json.dumps(_round_floats(report_to_json(report))) + "\n")
    return 0


def _cmd_predict(args) -> int:
    print(f"{predict_extremal(args.x, args.cm):.12g}")
    return 0


def _cmd_st_hist(args) -> int:
    curves = load_curves(args.curves)
    print("label,bin_lo,bin_hi,empirical,mu_st")
    for E in curves:
        report = scan(E, args.lo, args.hi, keep_records=True, workers=args.threads)
        for lo, hi, emp, mu in st_histogram(report.records, args.bins):
            print(f"{E.label},{lo:.12g},{hi:.12g},{emp:.12g},{mu:.12g}")
    return 0


def _interval_from_args(args, M: int) -> Interval:
    if (args.alpha is None) != (args.beta is None):
        raise ConfigError("--alpha and --beta must be given together")
    if args.alpha is None:
        return Interval(0.0, 1.0 / M)
    return Interval(args.alpha, args.beta)


def _side_payload(poly) -> dict:
    report = coefficient_bounds_report(poly)
    return {
        "coeffs": [float(c) for c in poly.coeffs],
        "bounds_check": {
            "mu_st": report["mu_st"],
            "f0_error": report["f0_error"],
            "f0_bound": report["f0_bound"],
            "f0_pass": report["f0_pass"],
            "fn_worst_excess": report["fn_worst_excess"],
            "fn_pass": report["fn_pass"],
        },
    }


def _cmd_approx_verify(args) -> int:
    I = _interval_from_args(args, args.M)
    plus = majorant(I, args.M)
    minus = minorant(I, args.M)
    maj = _side_payload(plus)
    mino = _side_payload(minus)
    sand = sandwich_margins(plus, minus)
    sandwich_ok = sand["upper_margin"] >= 0.0 and sand["lower_margin"] >= 0.0
    out = {
        "M": args.M,
        "interval": [I.alpha, I.beta],
        "majorant": maj,
        "minorant": mino,
        "sandwich": {**sand, "pass": sandwich_ok},
    }
    all_pass = (
        maj["bounds_check"]["f0_pass"]
        and maj["bounds_check"]["fn_pass"]
        and mino["bounds_check"]["f0_pass"]
        and mino["bounds_check"]["fn_pass"]
        and sandwich_ok
    )
    if I.alpha == 0.0 and abs(I.beta - 1.0 / args.M) < 1e-12:
        sup = float(args.M * args.M * max(abs(c) for c in plus.coeffs))
        decay_ok = sup <= st_approx.EDGE_DECAY_CONSTANT_MAJORANT
        out["edge_decay"] = {
            "sup_m2_coeff": sup,
            "constant": st_approx.EDGE_DECAY_CONSTANT_MAJORANT,
            "pass": decay_ok,
        }
        all_pass = all_pass and decay_ok
    out["all_pass"] = all_pass
    _emit_json(out)
    if not all_pass:
        print("approx-verify: at least one bound check failed", file=sys.stderr)
        return 1
    return 0


def _cmd_fourier_dump(args) -> int:
    I = Interval(args.alpha, args.beta)
    poly = majorant(I, args.M) if args.side == "maj" else minorant(I, args.M)
    payload = _side_payload(poly)
    _emit_json(
        {
            "M": args.M,
            "interval": [I.alpha, I.beta],
            "side": poly.side.value,
            "coeffs": payload["coeffs"],
            "bounds_check": payload["bounds_check"],
        }
    )
    return 0


def _cmd_sympow_dump(args) -> int:
    curves = load_curves(args.curves)
    n = args.n
    for E in curves:
        for spec in E.bad_primes:
            eps, delta, exact = conductor_exponent(spec, n)
            try:
                lam1 = lambda_sym_bad(local_data(spec, n), 1)
            except ExtremalPrimesError:
                lam1 = None  # needs beta_p or an eps_n the reduction kind alone does not determine
            _emit_json(
                {
                    "label": E.label,
                    "p": spec.p,
                    "kind": kind_to_string(spec.kind, spec.d),
                    "n": n,
                    "eps_n": eps,
                    "delta_n": delta,
                    "exact": exact,
                    "lambda_m1": lam1,
                }
            )
    return 0


def _cmd_smoothed_sum(args) -> int:
    curves = load_curves(args.curves)
    for E in curves:
        value = smoothed_sum(E, args.n, args.x, workers=args.threads)
        out = {"label": E.label, "n": args.n, "x": args.x, "value": value}
        if args.n == 0:
            main_term = args.x * sympow.bump_integral()
            out["main_term"] = main_term
            out["ratio"] = value / main_term
        _emit_json(out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="extremal-primes",
        description="Extremal-prime scans, Sato-Tate sandwich polynomials, and symmetric-power local data.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("scan", help="classify every good prime of a range for each curve in a file")
    p.add_argument("--curves", required=True, help="curve file, one JSON object per line")
    p.add_argument("--lo", type=int, required=True, help="range lower end (inclusive)")
    p.add_argument("--hi", type=int, required=True, help="range upper end (exclusive)")
    p.add_argument("--records", action="store_true", help="include per-prime records in JSON output")
    p.add_argument("--out", required=True, help="output path")
    p.add_argument("--format", choices=("csv", "json"), default="json", help="output format")
    p.add_argument("--threads", type=int, default=1, help="worker processes")
    p.set_defaults(func=_cmd_scan)

    p = sub.add_parser("predict", help="conjectured extremal-prime count up to x")
    p.add_argument("--x", type=float, required=True, help="upper end of the count")
    p.add_argument("--cm", action=argparse.BooleanOptionalAction, required=True, help="CM rate (else non-CM)")
    p.set_defaults(func=_cmd_predict)

    p = sub.add_parser("st-hist", help="empirical angle histogram against the Sato-Tate mass")
    p.add_argument("--curves", required=True, help="curve file, one JSON object per line")
    p.add_argument("--lo", type=int, required=True, help="range lower end (inclusive)")
    p.add_argument("--hi", type=int, required=True, help="range upper end (exclusive)")
    p.add_argument("--bins", type=int, required=True, help="number of bins of [0, pi]")
    p.add_argument("--threads", type=int, default=1, help="worker processes")
    p.set_defaults(func=_cmd_st_hist)

    p = sub.add_parser("approx-verify", help="check the sandwich-polynomial bounds for one interval")
    p.add_argument("--M", type=int, required=True, help="polynomial degree")
    p.add_argument("--alpha", type=float, default=None, help="interval lower end (default 0)")
    p.add_argument("--beta", type=float, default=None, help="interval upper end (default 1/M)")
    p.set_defaults(func=_cmd_approx_verify)

    p = sub.add_parser("fourier-dump", help="dump sandwich-polynomial coefficients")
    p.add_argument("--M", type=int, required=True, help="polynomial degree")
    p.add_argument("--alpha", type=float, required=True, help="interval lower end")
    p.add_argument("--beta", type=float, required=True, help="interval upper end")
    p.add_argument("--side", choices=("maj", "min"), required=True, help="majorant or minorant")
    p.set_defaults(func=_cmd_fourier_dump)

    p = sub.add_parser("sympow-dump", help="dump bad-prime local data for each curve in a file")
    p.add_argument("--curves", required=True, help="curve file, one JSON object per line")
    p.add_argument("--n", type=int, required=True, help="symmetric-power index")
    p.set_defaults(func=_cmd_sympow_dump)

    p = sub.add_parser("smoothed-sum", help="bump-weighted prime sum of U_n(cos theta_p) log p")
    p.add_argument("--curves", required=True, help="curve file, one JSON object per line")
    p.add_argument("--n", type=int, required=True, help="symmetric-power index")
    p.add_argument("--x", type=float, required=True, help="scale of the bump weight")
    p.add_argument("--threads", type=int, default=1, help="worker processes")
    p.set_defaults(func=_cmd_smoothed_sum)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ExtremalPrimesError, ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
