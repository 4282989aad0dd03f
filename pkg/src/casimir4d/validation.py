"""Self-check suite run by ``casimir4d validate``.

Each check recomputes one headline result from scratch and compares it with
its reference value at a fixed tolerance.
"""

from __future__ import annotations

import math
import time
from dataclasses import asdict, dataclass, field

import numpy as np

from . import analysis, asymptotics, gradient, proximity, spectrum
from .base import TheoryKind
from .geometry import ConcentricPair

PI = math.pi


@dataclass
class CheckResult:
    number: int
    name: str
    passed: bool
    measured: dict = field(default_factory=dict)
    tolerance: str = ""

    def __post_init__(self):
        # numpy scalars would not survive json.dumps
        self.passed = bool(self.passed)
        self.measured = {k: v.item() if isinstance(v, np.generic) else v for k, v in self.measured.items()}

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        values = ", ".join(f"{k}={_short(v)}" for k, v in self.measured.items())
        return f"[{status}] {self.number:2d} {self.name}: {values} ({self.tolerance})"

    def to_dict(self) -> dict:
        return asdict(self)


def _short(v):
    if isinstance(v, float):
        return f"{v:.10g}"
    return str(v)


def k_sum_em(rho: float, k_max: int = 100_000) -> float:
    """EM energy resummed over reflections ``k`` instead of shells ``n``.

    Uses ``sum_{n>=2} (n^2 - 1) x^n = x(1+x)/(1-x)^3 - 1/(1-x) + 1``.
    """
    terms = []
    for k in range(1, k_max + 1):
        x = rho ** (2 * k)
        inner = x * (1 + x) / (1 - x) ** 3 - 1 / (1 - x) + 1
        terms.append(-inner / k)
        if abs(terms[-1]) < 1e-19:
            break
    return math.fsum(terms)


def check_oracle() -> CheckResult:
    start = time.perf_counter()
    worst = 0.0
    diffs = {}
    ok = True
    for rho, n_max in ((0.1, 30), (0.5, 60), (0.9, 100)):
        pair = ConcentricPair.from_rho(rho)
        det = spectrum.scattering_logdet_energy(pair, n_max)
        ser = spectrum.em_energy_exact(pair)
        diff = abs(det.value - ser.value)
        ok &= diff <= 1e-12 + det.tail_bound + ser.tail_bound
        worst = max(worst, diff)
        diffs[rho] = diff
    elapsed = time.perf_counter() - start
    return CheckResult(
        1, "oracle equivalence", ok and elapsed < 1.0,
        {"diff_rho_0.5": diffs[0.5], "max_abs_diff": worst, "elapsed_s": round(elapsed, 3)},
        "|d| <= 1e-12 + tail, < 1 s",
    )


def check_exact_regression() -> CheckResult:
    value = spectrum.em_energy_exact(ConcentricPair.from_rho(0.5)).value
    ksum = k_sum_em(0.5)
    rel = abs(value - ksum) / abs(ksum)
    ok = abs(value - (-0.414637)) <= 1e-5 and rel <= 1e-10
    return CheckResult(2, "exact value rho=0.5", ok, {"F": value, "n_vs_k_rel": rel}, "-0.414637 +- 1e-5; 1e-10")


def _at_0002():
    x = 0.002
    exact = analysis.sphere_plate_exact(x).value
    return x, exact


def check_pfa_error() -> CheckResult:
    x, exact = _at_0002()
    err = analysis.percent_error(exact, proximity.pfa_leading(x).value)
    return CheckResult(3, "PFA error x=0.002", abs(err - 0.97) <= 0.02, {"err_pct": err}, "0.97 +- 0.02")


def check_de_error() -> CheckResult:
    x, exact = _at_0002()
    err = analysis.percent_error(exact, gradient.de2_energy(x).value)
    return CheckResult(4, "DE error x=0.002", abs(err + 0.20) <= 0.05, {"err_pct": err}, "-0.20 +- 0.05")


def check_beta() -> CheckResult:
    b = {t: gradient.second_order_match(t).beta for t in TheoryKind}
    expect = {
        TheoryKind.EM: 2.0 / 3.0 * (1.0 - 15.0 / PI**2),
        TheoryKind.DIRICHLET: 2.0 / 3.0,
        TheoryKind.NEUMANN: 2.0 / 3.0 - 20.0 / PI**2,
    }
    ok = all(abs(b[t] - expect[t]) <= 1e-12 for t in TheoryKind)
    ok &= abs(gradient.ntlo_coefficient(b[TheoryKind.DIRICHLET]) - 0.25) <= 1e-12
    return CheckResult(
        5, "kernel matching", ok,
        {"beta_em": b[TheoryKind.EM], "beta_d": b[TheoryKind.DIRICHLET], "beta_n": b[TheoryKind.NEUMANN]},
        "1e-12",
    )


def check_pp() -> CheckResult:
    residuals = [
        gradient.pp_consistency_check(t, d)[1] for t in (TheoryKind.EM, TheoryKind.DIRICHLET) for d in (1.0, 2.0)
    ]
    worst = max(residuals)
    return CheckResult(6, "F_pp'' = 2 gamma", worst <= 1e-14, {"max_residual": worst}, "1e-14")


NTLO_BASIS = ["pow(-1.5)", "pow(-0.5)", "logx", "const", "pow(0.5)"]
DIRICHLET_BASIS = ["pow(-1.5)", "pow(-0.5)", "logx", "const", "pow(0.5)", "pow(1.5)"]


def check_ntlo_fit() -> CheckResult:
    rep = analysis.fit_expansion("em", NTLO_BASIS, np.geomspace(1e-5, 1e-3, 60))
    c1 = rep.coefficient("pow(-0.5)") / rep.coefficient("pow(-1.5)")
    target = 0.25 - 60.0 / PI**2
    rel = abs(c1 / target - 1.0)
    return CheckResult(7, "NTLO extraction", rel <= 1e-3, {"c1": c1, "rel_err": rel}, "1e-3 relative")


def check_log_nntlo() -> CheckResult:
    fit = analysis.fit_log_nntlo()
    mus = np.geomspace(0.02, 0.3, 40)
    worst = max(
        abs(asymptotics.em_asymptotic_mu(m).value - spectrum.em_energy_exact(ConcentricPair.from_mu(m)).value)
        / (0.05 * m**3)
        for m in mus
    )
    ok = abs(abs(fit.slope) - 0.25) <= 0.0025 and fit.closest_variant() is asymptotics.Variant.FITTED and worst <= 1.0
    return CheckResult(
        8, "log NNTLO", ok,
        {"slope": fit.slope, "constant": fit.constant, "variant": fit.closest_variant().value, "mu_ratio": worst},
        "|a| = 0.25 +- 0.0025; |d| <= 0.05 mu^3",
    )


def check_dirichlet() -> CheckResult:
    rep = analysis.fit_expansion("dirichlet", DIRICHLET_BASIS, np.geomspace(1e-4, 1e-2, 60))
    c2 = rep.coefficient("pow(0.5)") / rep.coefficient("pow(-1.5)")
    target = 12.0 / PI**4 - 7.0 / 480.0
    log_coef = rep.coefficient("logx")
    ok = abs(c2 / target - 1.0) <= 0.01 and abs(log_coef) < 1e-3
    return CheckResult(9, "Dirichlet NNTLO", ok, {"c2": c2, "log_coef": log_coef}, "1%; |log| < 1e-3")


def check_quadrature() -> CheckResult:
    prof = proximity.HeightProfile("parabolic", 1.0)
    worst = max(
        abs(proximity.pfa_quadrature(prof, x).value / proximity.pfa_leading(x).value - 1.0)
        for x in (0.001, 0.01, 0.1, 1.0)
    )
    return CheckResult(10, "PFA quadrature", worst <= 1e-8, {"max_rel": worst}, "1e-8 relative")


def check_figures() -> CheckResult:
    data = analysis.figure_data()
    small = [r for r in data.rows if r.x <= 0.01]
    ratios = [r.F_exact / r.F_pfa for r in small]
    monotone = all(b <= a for a, b in zip(ratios, ratios[1:]))
    de_better = all(abs(r.err_de_pct) < abs(r.err_pfa_pct) for r in small)
    near_one = abs(ratios[0] - 1.0) < 1e-3
    return CheckResult(
        11, "figure content", monotone and de_better and near_one,
        {"ratio_at_xmin": ratios[0], "monotone": monotone, "de_better": de_better},
        "ratio -> 1; |err_DE| < |err_PFA| for x <= 0.01",
    )


CHECKS = (
    check_oracle,
    check_exact_regression,
    check_pfa_error,
    check_de_error,
    check_beta,
    check_pp,
    check_ntlo_fit,
    check_log_nntlo,
    check_dirichlet,
    check_quadrature,
    check_figures,
)


def run_all() -> list[CheckResult]:
    start = time.perf_counter()
    results = [check() for check in CHECKS]
    first = analysis.figure_data()
    second = analysis.figure_data()
    deterministic = first.fig2 == second.fig2
    elapsed = time.perf_counter() - start
    results.append(
        CheckResult(
            12, "suite runtime", elapsed < 60.0 and deterministic,
            {"elapsed_s": round(elapsed, 2), "deterministic": deterministic},
            "< 60 s",
        )
    )
    return results
