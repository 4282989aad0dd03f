"""Derivative expansion (DE) of the sphere-plate energy.

The second-order perturbative kernel around two flat plates is

    G(k; d) = -(2 / d^5) * sum_pol G_pol(d k / 2 pi)

with small-momentum polynomials for the TM and TE polarizations.  Matching
its ``k^0`` and ``k^2`` coefficients to the gradient expansion gives the
coefficient ``beta`` of ``(grad H)^2``.  A non-zero ``k^3`` term makes the
kernel non-analytic in the momentum components, which is what stops the
expansion at second order for EM and Neumann.
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import asdict, dataclass

import numpy as np

from .base import DomainError, EnergyValue, TheoryKind, require_positive
from .proximity import pfa_leading, plane_plane_density

PI = math.pi


class Polarization(str, enum.Enum):
    TM = "TM"
    TE = "TE"


@dataclass(frozen=True)
class KernelModel:
    """Truncated kernel ``G(x) = c0 + c2 x^2 + c3 x^3 + c4 x^4``."""

    polarization: Polarization
    c0: float
    c2: float
    c3: float
    c4: float

    def __call__(self, x):
        return kernel_value(self, x)


TM_KERNEL = KernelModel(
    Polarization.TM,
    c0=PI**2 / 480.0,
    c2=PI**4 / 1080.0,
    c3=0.0,
    c4=-(45.0 + PI**4) * PI**2 / 6750.0,
)

TE_KERNEL = KernelModel(
    Polarization.TE,
    c0=PI**2 / 480.0,
    c2=PI**2 * (PI**2 - 30.0) / 1080.0,
    c3=PI**3 / 32.0,
    c4=-(1095.0 + 50.0 * PI**2 + PI**4) * PI**2 / 6750.0,
)

# Dirichlet shares the TM kernel, Neumann the TE kernel
POLARIZATIONS = {
    TheoryKind.EM: (TM_KERNEL, TE_KERNEL),
    TheoryKind.DIRICHLET: (TM_KERNEL,),
    TheoryKind.NEUMANN: (TE_KERNEL,),
}


def kernel_value(model: KernelModel, x):
    """Evaluate the truncated kernel polynomial; only meaningful for small ``|x|``."""
    x = np.asarray(x, dtype=float)
    value = model.c0 + x * x * (model.c2 + x * (model.c3 + x * model.c4))
    return float(value) if value.ndim == 0 else value


def assemble_full_kernel(theory, k, d: float):
    """Second-order kernel ``G(k; d)`` in units of k_B T."""
    d = require_positive("d", d)
    x = np.asarray(k, dtype=float) * d / (2.0 * PI)
    total = sum(kernel_value(m, x) for m in POLARIZATIONS[TheoryKind.parse(theory)])
    return -2.0 / d**5 * total


@dataclass(frozen=True)
class SecondOrderMatch:
    gamma: float
    delta: float
    beta: float
    cubic_present: bool

    def to_dict(self) -> dict:
        return asdict(self)


def second_order_match(theory, d: float = 1.0) -> SecondOrderMatch:
    """Match the kernel's ``k^0`` and ``k^2`` coefficients; ``beta = delta / F_pp(d)``."""
    d = require_positive("d", d)
    theory = TheoryKind.parse(theory)
    models = POLARIZATIONS[theory]
    gamma = -2.0 / d**5 * sum(m.c0 for m in models)
    delta = -2.0 / d**5 * sum(m.c2 for m in models) * (d / (2.0 * PI)) ** 2
    beta = delta / plane_plane_density(d, theory)
    return SecondOrderMatch(gamma=gamma, delta=delta, beta=beta, cubic_present=any(m.c3 != 0.0 for m in models))


def first_order_coefficient(theory, d: float) -> float:
    """Coefficient of ``h(k=0)`` in the perturbative energy, defined as ``F_pp'(d)``."""
    d = require_positive("d", d)
    return -3.0 * plane_plane_density(d, theory) / d


def pp_consistency_check(theory, d: float) -> tuple[bool, float]:
    """Compare ``F_pp''(d)`` with ``2 gamma(d)``.

    ``F_pp`` is a pure ``d^-3`` law, so ``F_pp''(d) = 12 F_pp(d) / d^2``.
    Returns ``(ok, residual)`` with the residual relative to ``|F_pp''|``.
    """
    d = require_positive("d", d)
    second = 12.0 * plane_plane_density(d, theory) / d**2
    two_gamma = 2.0 * second_order_match(theory, d).gamma
    residual = abs(second - two_gamma) / abs(second)
    return residual <= 1e-14, residual


def ntlo_coefficient(beta: float) -> float:
    """Coefficient of ``x`` relative to the PFA: ``6 beta - 15/4``."""
    return 6.0 * beta - 3.75


def de2_energy(x: float, theory=TheoryKind.EM) -> EnergyValue:
    """Second-order DE energy ``F_PFA (1 + (6 beta - 15/4) x)``."""
    x = require_positive("x", x)
    beta = second_order_match(theory).beta
    return EnergyValue(pfa_leading(x, theory).value * (1.0 + ntlo_coefficient(beta) * x))


@dataclass(frozen=True)
class DE4Params:
    """Coefficients of the four-derivative terms of the gradient expansion.

    No EM values exist: the TE kernel has no fourth-order Taylor expansion.
    """

    beta: float
    beta1: float = 0.0
    beta2: float = 0.0
    beta3: float = 0.0
    beta4: float = 0.0

    def __post_init__(self):
        for name, value in asdict(self).items():
            if not math.isfinite(value):
                raise DomainError(f"{name} must be finite")


def nntlo_coefficient(p: DE4Params) -> float:
    """Coefficient of ``x^2`` relative to the PFA in the fourth-order DE."""
    return -15.0 * (
        7.0 / 32.0 + 0.5 * p.beta + 144.0 / 5.0 * p.beta1 + 48.0 / 5.0 * p.beta2 + 48.0 / 5.0 * p.beta3 + 4.0 * p.beta4
    )


def de4_energy(x: float, params: DE4Params, theory=TheoryKind.EM) -> EnergyValue:
    """Fourth-order DE energy for user-supplied ``beta^(i)``; analytic in ``x`` by construction."""
    x = require_positive("x", x)
    bracket = 1.0 + ntlo_coefficient(params.beta) * x + nntlo_coefficient(params) * x * x
    return EnergyValue(pfa_leading(x, theory).value * bracket)


def beta_table() -> dict[str, dict]:
    return {
        t.value: {"beta": m.beta, "cubic_present": m.cubic_present}
        for t in TheoryKind
        for m in [second_order_match(t)]
    }


def beta_table_json() -> str:
    return json.dumps(beta_table(), indent=2, sort_keys=True)
