"""Accuracy of the approximations against the exact series.

Percent errors, parameter sweeps, data behind the two comparison figures, and
linear least-squares extraction of expansion coefficients from the exact
energies.  The exact series is always the reference.
"""

from __future__ import annotations

import json
import math
import re
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np
from scipy.linalg import solve_triangular

from .asymptotics import (
    DIRICHLET_SPHERE_PLATE,
    EM_BRACKET,
    EM_LEADING,
    EM_SPHERE_PLATE_FITTED,
    EM_SPHERE_PLATE_PRINTED,
    ExpansionCoefficients,
    Variant,
)
from .base import CasimirError, DomainError, EnergyValue, FitError, TheoryKind
from .geometry import ConcentricPair, mu_of_sphere_plate
from .gradient import de2_energy
from .proximity import pfa_leading
from .spectrum import DEFAULT_TOL, exact_energy

MAX_CONDITION = 1e12

FIG2_POINTS_PER_DECADE = 40
FIG_X_RANGE = (1e-4, 1e-1)
# point at which the PFA and DE errors are usually quoted
REFERENCE_X = 0.002

_POW = re.compile(r"^pow\(\s*([-+0-9./eE ]+)\s*\)$")


def percent_error(exact, approx) -> float:
    """``100 (exact - approx) / |approx|``."""
    exact, approx = float(exact), float(approx)
    if approx == 0.0:
        raise DomainError("approximate value is zero")
    return 100.0 * (exact - approx) / abs(approx)


def sphere_plate_exact(x: float, theory=TheoryKind.EM, tol: float = DEFAULT_TOL) -> EnergyValue:
    """Exact sphere-plate energy at ``x = d/R``."""
    return exact_energy(ConcentricPair.from_mu(mu_of_sphere_plate(x)), theory, tol)


# -- least squares -------------------------------------------------------------


def pow_(p: float) -> str:
    return f"pow({float(p)!r})"


def _parse_power(tag: str) -> float:
    match = _POW.match(tag)
    if not match:
        raise DomainError(f"unknown basis function {tag!r}; use pow(p), logx or const")
    text = match.group(1).replace(" ", "")
    if "/" in text:
        num, den = text.split("/")
        return float(num) / float(den)
    return float(text)


def basis_columns(basis, x) -> np.ndarray:
    """Design matrix with one column per basis tag (``pow(p)``, ``logx``, ``const``)."""
    x = np.asarray(x, dtype=float)
    cols = []
    for tag in basis:
        if tag == "logx":
            cols.append(np.log(x))
        elif tag == "const":
            cols.append(np.ones_like(x))
        else:
            cols.append(x ** _parse_power(tag))
    return np.stack(cols, axis=1)


@dataclass
class FitReport:
    basis: list[str]
    coefficients: list[float]
    max_residual: float
    grid: list[float]
    condition_estimate: float
    theory: str | None = None

    def coefficient(self, tag: str) -> float:
        if tag in self.basis:
            return self.coefficients[self.basis.index(tag)]
        if not tag.startswith("pow("):
            raise KeyError(tag)
        p = _parse_power(tag)
        for t, c in zip(self.basis, self.coefficients):
            if t.startswith("pow(") and _parse_power(t) == p:
                return c
        raise KeyError(tag)

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def least_squares(x, y, basis, weights=None, max_condition: float = MAX_CONDITION) -> FitReport:
    """Weighted linear least squares of ``y(x)`` on the basis tags.

    Columns are normalised and orthogonalised by a QR factorisation on the
    grid.  ``condition_estimate`` is the 2-norm condition number of the
    normalised weighted design.  The residual is unweighted.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    basis = list(basis)
    if len(x) != len(y):
        raise DomainError("x and y differ in length")
    if len(x) < len(basis):
        raise FitError("fewer points than basis functions")
    w = np.ones_like(x) if weights is None else np.asarray(weights, dtype=float)
    design = basis_columns(basis, x)
    a = design * w[:, None]
    norms = np.linalg.norm(a, axis=0)
    if np.any(norms == 0.0):
        raise FitError("a basis function vanishes on the grid")
    a = a / norms
    cond = float(np.linalg.cond(a))
    if not cond < max_condition:
        raise FitError(f"design is ill-conditioned (condition number {cond:.3g})")
    q, r = np.linalg.qr(a)
    coef = solve_triangular(r, q.T @ (w * y)) / norms
    residual = float(np.max(np.abs(design @ coef - y)))
    return FitReport(
        basis=basis,
        coefficients=[float(c) for c in coef],
        max_residual=residual,
        grid=[float(v) for v in x],
        condition_estimate=cond,
    )


def fit_expansion(
    theory, basis, x_grid, weight_power: float = 1.5, tol: float = DEFAULT_TOL, energy=None
) -> FitReport:
    """Fit the exact sphere-plate energy ``F(x)`` against a basis.

    Rows are weighted by ``x^weight_power`` so that the ``x^(-3/2)`` growth
    does not swamp the subleading terms.  ``energy``, a callable of ``x``,
    replaces the exact series as the data source (used for self-tests).

    Examples
    --------
    >>> rep = fit_expansion("em", ["pow(-1.5)", "pow(-0.5)", "logx", "const", "pow(0.5)"],
    ...                     np.geomspace(1e-5, 1e-3, 40))
    >>> round(rep.coefficient("pow(-0.5)") / rep.coefficient("pow(-1.5)"), 4)
    -5.8293
    """
    theory = TheoryKind.parse(theory)
    x = np.asarray(x_grid, dtype=float)
    basis = list(basis)
    if x.ndim != 1 or np.any(x <= 0.0) or np.any(x > 0.05):
        raise DomainError("x_grid must lie strictly inside (0, 0.05]")
    if len(x) < 3 * len(basis):
        raise DomainError("x_grid needs at least three points per basis function")
    if energy is None:
        y = np.array([sphere_plate_exact(v, theory, tol).value for v in x])
    else:
        y = np.array([float(energy(v)) for v in x])
    report = least_squares(x, y, basis, weights=x**weight_power)
    report.theory = theory.value
    return report


@dataclass
class LogFit:
    """Fit ``D(x) = slope ln x + intercept`` of the exact EM energy minus PFA and NTLO."""

    slope: float
    intercept: float
    residual: float
    x_range: tuple[float, float]
    sqrt_coefficient: float | None = None

    @property
    def constant(self) -> float:
        """Constant term once ``slope * ln(2x/pi^2)`` is split off."""
        return self.intercept - self.slope * math.log(2.0 / math.pi**2)

    def closest_variant(self) -> Variant:
        """Which sphere-plate coefficient set matches the fitted log and constant terms."""
        return min(
            (EM_SPHERE_PLATE_PRINTED, EM_SPHERE_PLATE_FITTED),
            key=lambda c: abs(self.slope - c.log_coefficient) + abs(self.constant - c.constant),
        ).variant

    def to_dict(self) -> dict:
        d = asdict(self)
        d["constant"] = self.constant
        return d


def fit_log_nntlo(x_range=(1e-6, 1e-5), points: int = 40, include_sqrt: bool = False) -> LogFit:
    """Extract the logarithmic NNTLO term of the EM sphere-plate energy.

    Forms ``D(x) = -F(x) - A x^(-3/2) (1 + c1 x)`` from the exact series and
    fits ``D = a ln x + b`` on a log-spaced grid.  The next analytic term,
    ``A c2 x^(1/2)``, biases the intercept unless the range is kept near
    ``1e-6``; ``include_sqrt`` adds it as a nuisance column instead.
    """
    lo, hi = map(float, x_range)
    if not (1e-6 <= lo < hi <= 1e-3):
        raise DomainError("x_range must satisfy 1e-6 <= lo < hi <= 1e-3")
    x = np.geomspace(lo, hi, points)
    minus_f = -np.array([sphere_plate_exact(v).value for v in x])
    d = minus_f - EM_LEADING * x**-1.5 * (1.0 + EM_BRACKET[1.0] * x)
    basis = ["logx", "const"] + (["pow(0.5)"] if include_sqrt else [])
    rep = least_squares(x, d, basis)
    return LogFit(
        slope=rep.coefficients[0],
        intercept=rep.coefficients[1],
        residual=rep.max_residual,
        x_range=(lo, hi),
        sqrt_coefficient=rep.coefficients[2] if include_sqrt else None,
    )


def fit_mu_expansion(mu_grid=None, tol: float = DEFAULT_TOL) -> ExpansionCoefficients:
    """Fit ``-F = A/mu^3 + B/mu + C ln(mu/pi) + D + E mu`` to the exact EM series.

    Returns a coefficient set in the same convention as ``EM_MU_FITTED``, with
    the largest absolute residual attached.
    """
    mu = np.geomspace(0.02, 0.3, 60) if mu_grid is None else np.asarray(mu_grid, dtype=float)
    minus_f = -np.array([exact_energy(ConcentricPair.from_mu(m), TheoryKind.EM, tol).value for m in mu])
    # in t = mu / pi the log column is exactly ln(mu / pi)
    t = mu / math.pi
    rep = least_squares(t, minus_f, ["pow(-3)", "pow(-1)", "logx", "const", "pow(1)"], weights=mu**3)
    a, b, c, d, e = rep.coefficients
    return ExpansionCoefficients(
        prefactor=1.0,
        powers={-3.0: a * math.pi**3, -1.0: b * math.pi, 1.0: e / math.pi},
        log_coefficient=c,
        log_argument_scale=1.0 / math.pi,
        constant=d,
        variant=Variant.FITTED,
        residual=rep.max_residual,
    )


# -- sweeps and figures ----------------------------------------------------------


@dataclass(frozen=True)
class SweepRow:
    x: float
    F_exact: float
    F_pfa: float
    F_de2: float
    F_asym_fitted: float
    err_pfa_pct: float
    err_de_pct: float

    def to_dict(self) -> dict:
        return asdict(self)


def _asymptotic(x: float, theory: TheoryKind) -> float:
    coeffs = EM_SPHERE_PLATE_FITTED if theory is TheoryKind.EM else DIRICHLET_SPHERE_PLATE
    return coeffs.evaluate(x)


def sweep_row(x: float, theory=TheoryKind.EM, tol: float = DEFAULT_TOL) -> SweepRow:
    theory = TheoryKind.parse(theory)
    exact = sphere_plate_exact(x, theory, tol).value
    pfa = pfa_leading(x, theory).value
    de2 = de2_energy(x, theory).value
    return SweepRow(
        x=float(x),
        F_exact=exact,
        F_pfa=pfa,
        F_de2=de2,
        F_asym_fitted=_asymptotic(x, theory),
        err_pfa_pct=percent_error(exact, pfa),
        err_de_pct=percent_error(exact, de2),
    )


def sweep(theory, x_values, tol: float = DEFAULT_TOL, workers: int | None = None) -> list[SweepRow]:
    """One :class:`SweepRow` per ``x``, in input order.

    Per-point failures are re-raised with the offending ``x`` in the message.
    """
    theory = TheoryKind.parse(theory)
    xs = [float(v) for v in x_values]
    if any(v <= 0.0 for v in xs):
        raise DomainError("x values must be positive")
    if any(b < a for a, b in zip(xs, xs[1:])):
        raise DomainError("x values must be sorted ascending")

    def one(v):
        try:
            return sweep_row(v, theory, tol)
        except CasimirError as exc:
            raise type(exc)(f"at x={v!r}: {exc}") from exc

    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(one, xs))
    return [one(v) for v in xs]


def figure_grid(
    x_range=FIG_X_RANGE, points_per_decade: int = FIG2_POINTS_PER_DECADE, extra=(REFERENCE_X,)
) -> np.ndarray:
    """Log-spaced grid over ``x_range`` with the ``extra`` points inside the range merged in."""
    lo, hi = x_range
    decades = math.log10(hi) - math.log10(lo)
    grid = np.geomspace(lo, hi, int(round(decades * points_per_decade)) + 1)
    inside = [v for v in extra if lo <= v <= hi]
    return np.union1d(grid, inside)


@dataclass
class FigureData:
    """Columns behind the PFA-ratio plot (fig1) and the percent-error plot (fig2)."""

    rows: list[SweepRow] = field(default_factory=list)

    @property
    def fig1(self) -> list[tuple[float, float]]:
        return [(r.x, r.F_exact / r.F_pfa) for r in self.rows]

    @property
    def fig2(self) -> list[tuple[float, float, float]]:
        return [(-math.log10(r.x), r.err_pfa_pct, r.err_de_pct) for r in self.rows]


def figure_data(x_values=None, theory=TheoryKind.EM, tol: float = DEFAULT_TOL) -> FigureData:
    xs = figure_grid() if x_values is None else x_values
    return FigureData(sweep(theory, xs, tol))
