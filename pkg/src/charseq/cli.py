"""Command line entry point: figures, single pairs, verification and constants."""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import asymptotics as asy
from .correlate import mean_square_periodic, psc
from .experiments import FIGURES, MIN_PRIME, ExperimentConfig, pair_shape, write_figure
from .fields import DomainError, is_prime
from .params import tabulated_parameters, parameters_from_combinations
from .sequences import family_combination, family_sequence, family_spec, residue_class_table
from .verify import run_all


def _positive_float(text: str) -> float:
    value = float(text)
    if value <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="charseq", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    fig = sub.add_parser(
        "figure",
        help="write a figure's data as CSV",
        description=f"Regenerate one figure as CSV. Prime-indexed figures use primes p = 1 mod 4 with {MIN_PRIME} <= p < pmax; "
        "smaller primes give degenerate appended lengths.",
    )
    fig.add_argument("name", choices=FIGURES)
    fig.add_argument("--pmax", type=int, default=2000, help="exclusive upper bound on p (default 2000)")
    fig.add_argument("--out", help="output path (default stdout)")
    fig.add_argument("--jobs", type=int, default=1, help="worker processes (default 1)")
    fig.add_argument("--lambda", dest="lam", type=_positive_float, help="length ratio overriding the figure's default")

    pair = sub.add_parser("pair", help="merit figures and S, U, V, W of one pair")
    pair.add_argument("--p", type=int, required=True)
    pair.add_argument("--left", choices="fgh", required=True)
    pair.add_argument("--right", choices="fgh", required=True)
    mode = pair.add_mutually_exclusive_group()
    mode.add_argument("--natural", action="store_true", help="shift (p-1)/4, length p (default)")
    mode.add_argument("--appended", action="store_true", help="length round(p Lambda_app), optimal shift")
    pair.add_argument("--shift", type=int, help="shift of the left sequence")
    pair.add_argument("--shift-right", type=int, help="shift of the right sequence (default: same as left)")
    pair.add_argument("--length", type=int)
    pair.add_argument("--json", action="store_true")

    sub.add_parser("verify", help="run every invariant suite")
    sub.add_parser("constants", help="print the optimum constants and limits")
    return parser


def _figure(args) -> int:
    config = ExperimentConfig(args.name, p_max=args.pmax, lam=args.lam, out=args.out, jobs=args.jobs)
    text = write_figure(config)
    if not args.out:
        sys.stdout.write(text)
    return 0


def _params_dict(params) -> dict:
    return {"S": params.s, "U": params.u, "V": params.v, "W_f": params.w_f, "W_g": params.w_g}


def pair_report(p, left, right, appended=False, shift=None, shift_right=None, length=None) -> dict:
    if not is_prime(p) or p < 3:
        raise DomainError(f"expected an odd prime, got {p}")
    if (shift is None) != (length is None):
        raise ValueError("--shift and --length must be given together")
    if shift_right is not None and shift is None:
        raise ValueError("--shift-right needs --shift and --length")
    s, l = pair_shape(p, (left, right), appended, shift, length)
    r = s if shift_right is None else shift_right
    f = family_sequence(left, p, s, l)
    g = family_sequence(right, p, r, l)
    merit = psc(f, g)
    direct = parameters_from_combinations(family_combination(left, p), family_combination(right, p))
    table = tabulated_parameters(p, left, right)
    msq = mean_square_periodic(residue_class_table(family_spec(left, p)), residue_class_table(family_spec(right, p)), p)
    return {
        "p": p,
        "left": left,
        "right": right,
        "shift_left": s,
        "shift_right": r,
        "length": l,
        "merit": {
            "cdf": merit.cdf,
            "cmf": merit.cmf,
            "df_left": merit.df_f,
            "df_right": merit.df_g,
            "psc": merit.psc,
            "cdf_exact": str(merit.cdf_exact),
            "df_left_exact": str(merit.df_f_exact),
            "df_right_exact": str(merit.df_g_exact),
        },
        "params_direct": _params_dict(direct),
        "params_table": _params_dict(table),
        "mean_square_periodic": msq,
        "periodic_residual": abs(msq - direct.periodic_mean_square),
    }


def _pair(args) -> int:
    report = pair_report(args.p, args.left, args.right, args.appended, args.shift, args.shift_right, args.length)
    if args.json:
        print(json.dumps(report, indent=2))
        return 0
    print(f"p={report['p']} {report['left']} vs {report['right']}: shifts {report['shift_left']}, {report['shift_right']}, length {report['length']}")
    for key, value in report["merit"].items():
        print(f"  {key:<15} {value}")
    for label in ("params_direct", "params_table"):
        row = " ".join(f"{k}={v:.9g}" for k, v in report[label].items())
        print(f"  {label:<15} {row}")
    print(f"  {'periodic_msq':<15} {report['mean_square_periodic']:.12g}")
    print(f"  {'residual':<15} {report['periodic_residual']:.3e}")
    return 0


def _verify(args) -> int:
    results = run_all(echo=print)
    failed = sum(not r.passed for r in results)
    print(f"{len(results) - failed}/{len(results)} suites passed")
    return 1 if failed else 0


def constants_table() -> list[tuple[str, str]]:
    c = asy.optimum_constants()
    coeffs = asy.appended_limit_coefficients()
    natural = asy.psc_limit_natural()
    return [
        ("df_min", f"{c.df_min:.9f}"),
        ("mf_max", f"{c.mf_max:.9f}"),
        ("lambda_app", f"{c.lambda_app:.9f}"),
        ("r_offsets", c.r_offsets),
        ("psc_natural", f"{float(natural):.7f} ({natural})"),
        ("psc_appended", f"{asy.psc_limit_appended():.7f}"),
        ("app_df_constant", f"{coeffs['df_constant']:.9f}"),
        ("app_df_cos2gamma", f"{coeffs['df_cos_coefficient']:.9f}"),
        ("app_cdf_constant", f"{coeffs['cdf_constant']:.9f}"),
        ("app_cdf_cos2gamma", f"{coeffs['cdf_cos_coefficient']:.9f}"),
        ("legendre_df_natural", str(asy.limit_df_legendre(Fraction(1), Fraction(1, 4)))),
    ]


def _constants(args) -> int:
    for name, value in constants_table():
        print(f"{name:<20} {value}")
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handler = {"figure": _figure, "pair": _pair, "verify": _verify, "constants": _constants}[args.command]
    try:
        return handler(args)
    except (DomainError, ValueError) as exc:
        parser.error(str(exc))
    except OSError as exc:
        print(f"charseq: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
