"""Command-line front end.

Subcommands: ``energy``, ``sweep``, ``figure``, ``kernel``, ``fit`` and
``validate``.  Defaults can be read from a ``key = value`` file passed with
``--config``; command-line flags always win over the file.

Exit codes: 0 success, 1 validation failure, 2 invalid input,
3 convergence failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import analysis, asymptotics, gradient, svg, validation
from .base import CasimirError, ConvergenceError, TheoryKind
from .geometry import (
    ConcentricPair,
    SphereSphereGeometry,
    concentric_of_geometry,
    mu_of_sphere_plate,
)
from .proximity import pfa_leading
from .spectrum import DEFAULT_TOL, exact_energy

EXIT_OK, EXIT_VALIDATION, EXIT_INPUT, EXIT_CONVERGENCE = 0, 1, 2, 3


class InputError(Exception):
    pass


# -- output --------------------------------------------------------------------


def _cell(v):
    if isinstance(v, bool):
        return str(v).lower()
    if isinstance(v, (float, np.floating)):
        return format(float(v), ".17g")
    return str(v)


def to_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    if rows:
        writer.writerow(rows[0].keys())
        for row in rows:
            writer.writerow(_cell(v) for v in row.values())
    return buf.getvalue()


def to_json(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def render(rows: list[dict], fmt: str) -> str:
    if fmt == "json":
        return to_json(rows)
    if fmt == "csv":
        return to_csv(rows)
    raise InputError(f"format {fmt!r} is not available for this command")


# -- commands ------------------------------------------------------------------


def _pair_from_args(args) -> tuple[ConcentricPair, dict]:
    groups = {
        "rho": args.rho is not None,
        "x": args.x is not None,
        "spheres": any(v is not None for v in (args.r1, args.r2, args.d)),
    }
    if sum(groups.values()) != 1:
        raise InputError("give exactly one of --rho, --x, or --r1/--r2/--d")
    if groups["rho"]:
        return ConcentricPair.from_rho(args.rho), {}
    if groups["x"]:
        return ConcentricPair.from_mu(mu_of_sphere_plate(args.x)), {"x": args.x}
    if None in (args.r1, args.r2, args.d):
        raise InputError("--r1, --r2 and --d must be given together")
    geom = SphereSphereGeometry(args.r1, args.r2, args.d)
    return concentric_of_geometry(geom), {}


def run_energy(args) -> str:
    theory = TheoryKind.parse(args.theory)
    pair, extra = _pair_from_args(args)
    exact = exact_energy(pair, theory, args.tol, n_max=args.nmax)
    # approximations refer to the sphere-plate system with the same mu
    em1 = math.expm1(pair.mu)
    x = extra.get("x", em1 * em1 / (2.0 * math.exp(pair.mu)))  # cosh(mu) - 1
    pfa = pfa_leading(x, theory).value
    de2 = gradient.de2_energy(x, theory).value
    if theory is TheoryKind.EM:
        coeffs = asymptotics.EM_MU_FITTED if args.variant == "fitted" else asymptotics.EM_MU_PRINTED
        asym = asymptotics.em_asymptotic_mu(pair.mu, coeffs).value
    else:
        asym = asymptotics.dirichlet_sphere_plate_expansion(x).value
    record = {
        "theory": theory.value,
        "rho": pair.rho,
        "mu": pair.mu,
        "x_equiv": x,
        "F_exact": exact.value,
        "n_max": exact.n_max,
        "tail_bound": exact.tail_bound,
        "F_pfa": pfa,
        "F_de2": de2,
        "F_asym": asym,
        "err_pfa_pct": analysis.percent_error(exact.value, pfa),
        "err_de_pct": analysis.percent_error(exact.value, de2),
    }
    return render([record], args.format)


def _x_grid(args, default=None) -> np.ndarray:
    if args.xmin is None and args.xmax is None and args.points is None and default is not None:
        return default
    xmin = args.xmin if args.xmin is not None else analysis.FIG_X_RANGE[0]
    xmax = args.xmax if args.xmax is not None else analysis.FIG_X_RANGE[1]
    points = args.points if args.points is not None else 40
    if not (0.0 < xmin < xmax) or points < 2:
        raise InputError("empty range: need 0 < xmin < xmax and points >= 2")
    return np.geomspace(xmin, xmax, points)


def run_sweep(args) -> str:
    rows = analysis.sweep(args.theory, _x_grid(args), args.tol)
    return render([r.to_dict() for r in rows], args.format)


def run_figure(args) -> dict[str, str]:
    """Return ``{filename: content}`` for fig1 and fig2 in the requested format."""
    data = analysis.figure_data(_x_grid(args, analysis.figure_grid()), args.theory, args.tol)
    fig1 = [{"x": x, "ratio": r} for x, r in data.fig1]
    fig2 = [{"log10inv_x": lx, "err_pfa_pct": a, "err_de_pct": b} for lx, a, b in data.fig2]
    if args.format == "svg":
        xs = [row["x"] for row in fig1]
        return {
            "fig1.csv": to_csv(fig1),
            "fig2.csv": to_csv(fig2),
            "fig1.svg": svg.line_plot(
                [("exact / PFA", xs, [row["ratio"] for row in fig1])],
                title="Sphere-plate energy normalized by the PFA",
                xlabel="d/R", ylabel="F / F_PFA", logx=True, hline=1.0,
            ),
            "fig2.svg": svg.line_plot(
                [
                    ("PFA", [r["log10inv_x"] for r in fig2], [r["err_pfa_pct"] for r in fig2]),
                    ("DE", [r["log10inv_x"] for r in fig2], [r["err_de_pct"] for r in fig2]),
                ],
                title="Percent error of the sphere-plate energy",
                xlabel="-log10(d/R)", ylabel="error (%)", hline=0.0,
            ),
        }
    ext = args.format
    return {f"fig1.{ext}": render(fig1, ext), f"fig2.{ext}": render(fig2, ext)}


def run_kernel(args) -> str:
    d = args.d if args.d is not None else 1.0
    rows = []
    for theory in TheoryKind:
        m = gradient.second_order_match(theory, d)
        rows.append({"theory": theory.value, "d": d, **m.to_dict(), "ntlo": gradient.ntlo_coefficient(m.beta)})
    if args.format == "json":
        return to_json({r["theory"]: {k: v for k, v in r.items() if k != "theory"} for r in rows})
    return render(rows, args.format)


def run_fit(args) -> str:
    theory = TheoryKind.parse(args.theory)
    if theory is TheoryKind.DIRICHLET:
        basis, default = validation.DIRICHLET_BASIS, np.geomspace(1e-4, 1e-2, 60)
    else:
        basis, default = validation.NTLO_BASIS, np.geomspace(1e-5, 1e-3, 60)
    report = analysis.fit_expansion(theory, basis, _x_grid(args, default), tol=args.tol)
    if args.format == "json":
        return to_json(report.to_dict())
    rows = [{"basis": b, "coefficient": c} for b, c in zip(report.basis, report.coefficients)]
    rows.append({"basis": "max_residual", "coefficient": report.max_residual})
    rows.append({"basis": "condition_estimate", "coefficient": report.condition_estimate})
    return render(rows, args.format)


def run_validate(args) -> tuple[str, bool]:
    results = validation.run_all()
    passed = all(r.passed for r in results)
    if args.format == "json":
        return to_json({"passed": passed, "checks": [r.to_dict() for r in results]}), passed
    lines = [r.line() for r in results]
    lines.append(f"{'ALL PASS' if passed else 'FAILURES'}: {sum(r.passed for r in results)}/{len(results)}")
    return "\n".join(lines) + "\n", passed


# -- argument handling -------------------------------------------------------------


def read_config(path: str) -> dict[str, str]:
    """Parse ``key = value`` lines; ``#`` starts a comment."""
    out = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise InputError(f"{path}:{lineno}: expected key = value")
        key, value = (s.strip() for s in line.split("=", 1))
        out[key.replace("-", "_")] = value
    return out


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key = value file with default options")
    common.add_argument("--theory", default="em", choices=[t.value for t in TheoryKind])
    common.add_argument("--rho", type=float)
    common.add_argument("--x", type=float, help="sphere-plate gap over radius, d/R")
    common.add_argument("--r1", type=float)
    common.add_argument("--r2", type=float)
    common.add_argument("--d", type=float)
    common.add_argument("--xmin", type=float)
    common.add_argument("--xmax", type=float)
    common.add_argument("--points", type=int)
    common.add_argument("--nmax", type=int, help="sum exactly this many shells")
    common.add_argument("--tol", type=float, default=DEFAULT_TOL)
    common.add_argument("--out", help="output file (directory for figure)")
    common.add_argument("--format", default="csv", choices=["csv", "json", "svg"])
    common.add_argument("--variant", default="fitted", choices=["printed", "fitted"])

    parser = argparse.ArgumentParser(prog="casimir4d", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("energy", parents=[common], help="exact and approximate energies at one geometry")
    sub.add_parser("sweep", parents=[common], help="comparison table over a log-spaced x range")
    sub.add_parser("figure", parents=[common], help="data (or SVG) for the PFA-ratio and error plots")
    sub.add_parser("kernel", parents=[common], help="second-order kernel matching table")
    sub.add_parser("fit", parents=[common], help="least-squares expansion coefficients")
    sub.add_parser("validate", parents=[common], help="run the self-check suite")
    return parser


def parse_args(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.config:
        defaults = read_config(args.config)
        sub = parser._subparsers._group_actions[0].choices[args.command]
        known = {a.dest: a for a in sub._actions}
        for key, value in defaults.items():
            if key not in known or key in ("config", "help"):
                raise InputError(f"unknown config key {key!r}")
            action = known[key]
            sub.set_defaults(**{key: action.type(value) if action.type else value})
        args = parser.parse_args(argv)
    return args


def main(argv=None) -> int:
    try:
        args = parse_args(argv)
    except (InputError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        if args.command == "figure":
            files = run_figure(args)
            outdir = Path(args.out or ".")
            outdir.mkdir(parents=True, exist_ok=True)
            for name, text in files.items():
                (outdir / name).write_text(text)
            return EXIT_OK
        if args.command == "validate":
            text, passed = run_validate(args)
            emit(text, args.out)
            return EXIT_OK if passed else EXIT_VALIDATION
        if args.format == "svg":
            raise InputError("svg output is only available for the figure command")
        text = {"energy": run_energy, "sweep": run_sweep, "kernel": run_kernel, "fit": run_fit}[args.command](args)
        emit(text, args.out)
        return EXIT_OK
    except ConvergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONVERGENCE
    except (CasimirError, InputError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
