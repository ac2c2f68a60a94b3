"""Command-line interface.

Subcommands: iterate | check {kahler,einstein,induced,bochner} | sweep |
volume.  Output is deterministic JSON or CSV on stdout; figures are rendered
to files only when --plot is given.  Exit codes: 0 ok, 2 input error,
3 iteration halted non-Kahler, 4 size limit exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Optional

from .polyalg import as_fraction, format_fraction
from .exprparse import InputError, parse_density, parse_potential
from .geometry import (
    NonPositiveAtOriginError,
    NotAMetricError,
    RadialDensity,
    check_kahler_cp1,
    hessian_density,
    is_einstein,
    iterate,
)
from .inducedness import bochner_scale, is_projectively_induced_radial, ricci_potential
from .sweep import (
    SizeLimitError,
    coeff_positivity_interval,
    kahler_interval,
    sqrt2_boundary_values,
    symbolic_iterate,
    tracked_numerators,
)
from .volumes import chern_check, euclidean_volume, symplectic_volume

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_HALTED = 3
EXIT_SIZE_LIMIT = 4

FAMILY_TEXT = "1 + a*x + x^2"


def _emit(obj: dict) -> None:
    sys.stdout.write(json.dumps(obj, indent=2) + "\n")


def _parse_a(args) -> Optional[Fraction]:
    return None if args.a is None else as_fraction(args.a)


def _density_from_args(args) -> RadialDensity:
    has_pot = getattr(args, "potential", None) is not None
    has_den = getattr(args, "density", None) is not None
    if has_pot and has_den:
        raise InputError("give exactly one of --potential / --density")
    if has_den:
        return parse_density(args.density)
    if has_pot:
        return hessian_density(parse_potential(args.potential, _parse_a(args)))
    if getattr(args, "a", None) is not None:
        return hessian_density(parse_potential(FAMILY_TEXT, _parse_a(args)))
    raise InputError("an input is required: --potential, --density, or --a for the family")


def _potential_from_args(args):
    if getattr(args, "potential", None) is not None:
        return parse_potential(args.potential, _parse_a(args))
    if getattr(args, "a", None) is not None:
        return parse_potential(FAMILY_TEXT, _parse_a(args))
    raise InputError("a --potential is required (or --a for the family 1 + a*x + x^2)")


def cmd_iterate(args) -> int:
    v0 = _density_from_args(args)
    sign = 1 if args.sign == "+" else -1
    orbit = iterate(v0, args.k, sign=sign)
    steps = []
    for k, (d, verdict) in enumerate(zip(orbit.densities, orbit.verdicts)):
        lam = is_einstein(d)
        steps.append(
            {
                "k": k,
                "density": d.to_json(),
                "degrees": [d.v.num.degree, d.v.den.degree],
                "verdict": verdict.to_json(),
                "einstein": None if lam is None else format_fraction(lam),
            }
        )
    _emit(
        {
            "k_max": args.k,
            "sign": args.sign,
            "halted_at": orbit.halted_at,
            "ricci_flat": orbit.ricci_flat,
            "steps": steps,
        }
    )
    return EXIT_OK if orbit.halted_at is None else EXIT_HALTED


def cmd_check(args) -> int:
    what = args.what
    if what == "kahler":
        verdict = check_kahler_cp1(_density_from_args(args))
        _emit(verdict.to_json())
        return EXIT_OK
    if what == "einstein":
        lam = is_einstein(_density_from_args(args))
        _emit({"einstein": lam is not None, "lambda": None if lam is None else format_fraction(lam)})
        return EXIT_OK
    if what == "induced":
        pot = _potential_from_args(args)
        if args.ricci_of:
            pot = ricci_potential(pot)
        verdict = is_projectively_induced_radial(pot)
        _emit(verdict.to_json())
        return EXIT_OK
    if what == "bochner":
        scale = bochner_scale(_potential_from_args(args))
        _emit(scale.to_json())
        return EXIT_OK
    raise InputError(f"unknown check {what!r}")


def cmd_sweep(args) -> int:
    resolution = as_fraction(args.resolution)
    lo = as_fraction(args.lo)
    hi = as_fraction(args.hi)
    result = kahler_interval(
        args.k, resolution, lo=lo, hi=hi, size_limit=args.size_limit, jobs=args.jobs
    )
    if args.format == "json":
        payload = result.to_json(evidence=args.evidence)
        payload["degrees"] = [s.degree_table() for s in symbolic_iterate(args.k, args.size_limit)]
        payload["sqrt2_boundary_k1"] = sqrt2_boundary_values(
            symbolic_iterate(1, args.size_limit)[0].numerator
        )
        if args.evidence:
            # recheckable Sturm payloads for the certified inner pieces
            numerators = tracked_numerators(args.k, size_limit=args.size_limit)
            for piece_json, piece in zip(payload["inner"], result.inner):
                full = [
                    coeff_positivity_interval(
                        n, piece.lo, piece.hi, include_chain=True
                    ).to_json(evidence=True)["certificate"]
                    for n in numerators
                ]
                piece_json["certificate"] = full
        _emit(payload)
    else:
        lines = ["a_lo,a_hi,k,verdict,witness"]
        for row in result.csv_rows():
            lines.append(",".join(str(c) for c in row))
        sys.stdout.write("\n".join(lines) + "\n")
    if args.plot:
        from .plotting import render_sweep

        render_sweep(result, args.plot)
    return EXIT_OK


def _plot_samples(v: RadialDensity) -> list[tuple[float, float]]:
    from .volumes import float_evaluator

    # log-spaced grid over nine decades, plus the origin
    ev = float_evaluator(v.v)
    xs = [0.0] + [10.0 ** (-3 + 9 * i / 180.0) for i in range(181)]
    return [(x, ev(x)) for x in xs]


def cmd_volume(args) -> int:
    if args.euclidean:
        pot = _potential_from_args(args)
        report = euclidean_volume(pot, on_cp1=(args.chart == "cp1"))
        _emit(report.to_json())
        if args.plot:
            from .plotting import render_density_profile

            samples = _plot_samples(hessian_density(pot))
            render_density_profile(samples, args.plot, "density of the potential")
        return EXIT_OK
    v = _density_from_args(args)
    if args.chern:
        residual = chern_check(v)
        _emit({"residual": str(residual), "target": "4*pi"})
        return EXIT_OK
    if args.format == "plotdata":
        samples = _plot_samples(v)
        lines = ["x,v"] + [f"{x:.12g},{val:.12g}" for x, val in samples]
        sys.stdout.write("\n".join(lines) + "\n")
        if args.plot:
            from .plotting import render_density_profile

            render_density_profile(samples, args.plot, "radial density")
        return EXIT_OK
    report = symplectic_volume(v)
    _emit(report.to_json())
    if args.plot:
        from .plotting import render_density_profile

        render_density_profile(_plot_samples(v), args.plot, "radial density")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ricci-orbit",
        description="Exact Kahler-Ricci iteration of radial metrics on CP^1",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_input_flags(p, potential=True, density=True):
        if potential:
            p.add_argument("--potential", help="potential: JSON {f,h}, FS/HYP, or an expression")
        if density:
            p.add_argument("--density", help="density: JSON {num,den} or FS")
        p.add_argument("--a", help="parameter value for the family 1 + a*x + x^2")

    p_iter = sub.add_parser("iterate", help="run the Kahler-Ricci iteration")
    add_input_flags(p_iter)
    p_iter.add_argument("--k", type=int, default=3, help="number of Ricci steps (default 3)")
    p_iter.add_argument("--sign", choices=["+", "-"], default="+", help="iteration sign")
    p_iter.set_defaults(func=cmd_iterate)

    p_check = sub.add_parser("check", help="run a single decision procedure")
    p_check.add_argument("what", choices=["kahler", "einstein", "induced", "bochner"])
    add_input_flags(p_check)
    p_check.add_argument(
        "--ricci-of",
        action="store_true",
        help="apply the check to the Ricci potential of the input (induced only)",
    )
    p_check.set_defaults(func=cmd_check)

    p_sweep = sub.add_parser("sweep", help="certified parameter sweep of the family")
    p_sweep.add_argument("--k", type=int, default=1, help="iteration depth (1..3)")
    p_sweep.add_argument("--resolution", default="1/10000", help="minimal certified width")
    p_sweep.add_argument("--lo", default="1", help="sweep domain lower endpoint")
    p_sweep.add_argument("--hi", default="2", help="sweep domain upper endpoint")
    p_sweep.add_argument("--format", choices=["csv", "json"], default="csv")
    p_sweep.add_argument("--evidence", action="store_true", help="include certificate payloads")
    p_sweep.add_argument("--jobs", type=int, default=1, help="worker processes (default 1)")
    p_sweep.add_argument("--size-limit", type=int, default=None, help="coefficient slot cap")
    p_sweep.add_argument("--plot", help="render the certified intervals to this image file")
    p_sweep.set_defaults(func=cmd_sweep)

    p_vol = sub.add_parser("volume", help="volumes and the Chern cross-check")
    add_input_flags(p_vol)
    p_vol.add_argument("--chern", action="store_true", help="report |int ricci(v) - 4*pi|")
    p_vol.add_argument("--euclidean", action="store_true", help="Bochner-Euclidean volume")
    p_vol.add_argument(
        "--chart",
        choices=["cp1", "affine"],
        default="cp1",
        help="euclidean volume domain: the CP^1 chart or the maximal affine disc",
    )
    p_vol.add_argument("--format", choices=["json", "plotdata"], default="json")
    p_vol.add_argument("--plot", help="render the density profile to this image file")
    p_vol.set_defaults(func=cmd_volume)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SizeLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SIZE_LIMIT
    except (InputError, NotAMetricError, NonPositiveAtOriginError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
