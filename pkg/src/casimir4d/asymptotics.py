"""Small-distance expansions of the exact energies.

Every expansion is stored as an :class:`ExpansionCoefficients` record and
evaluated as

    F / k_B T = -( prefactor * t^leading_power * sum_p c_p t^p
                   + log_coefficient * ln(log_argument_scale * t)
                   + constant )

where ``t`` is ``mu`` for the concentric-sphere form and ``x = d/R`` for the
sphere-plate forms.

Two EM coefficient sets are shipped.  ``PRINTED`` keeps the sign pattern as
it is usually quoted.  ``FITTED`` carries the signs that the exact series
actually requires: the ``1/mu`` and ``log`` terms of the mu-form, and the log
and constant terms of the sphere-plate form, enter with the opposite sign.
:func:`casimir4d.analysis.fit_mu_expansion` recovers the fitted values from the
exact series.
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass, replace

from scipy.special import zeta

from .base import DomainError, EnergyValue, require_positive

PI = math.pi
ZETA3 = float(zeta(3.0))
SQRT2 = math.sqrt(2.0)

EM_LEADING = SQRT2 * PI**4 / 1440.0
DIRICHLET_LEADING = SQRT2 * PI**4 / 2880.0

BRACKET_EXPONENTS = (0.0, 1.0, 1.5, 2.0, 2.5, 3.0, 3.5)


class Variant(str, enum.Enum):
    PRINTED = "printed"
    FITTED = "fitted"


@dataclass(frozen=True)
class ExpansionCoefficients:
    prefactor: float
    powers: dict[float, float]
    log_coefficient: float = 0.0
    log_argument_scale: float = 1.0
    constant: float = 0.0
    variant: Variant = Variant.PRINTED
    leading_power: float = 0.0
    residual: float | None = None

    def evaluate(self, t: float, order: float | None = None) -> float:
        """Value of the expansion at ``t``, keeping powers ``p <= order``."""
        t = require_positive("expansion variable", t)
        if order is None:
            keys = self.powers
        else:
            order = float(order)
            if order not in self.powers:
                raise DomainError(f"order {order} is not one of {sorted(self.powers)}")
            keys = [p for p in self.powers if p <= order]
        series = math.fsum(self.powers[p] * t**p for p in keys)
        total = self.prefactor * t**self.leading_power * series
        if self.log_coefficient:
            total += self.log_coefficient * math.log(self.log_argument_scale * t)
        return -(total + self.constant)

    def to_dict(self) -> dict:
        return {
            "prefactor": self.prefactor,
            "leading_power": self.leading_power,
            "powers": {repr(float(k)): v for k, v in sorted(self.powers.items())},
            "log_coefficient": self.log_coefficient,
            "log_argument_scale": self.log_argument_scale,
            "constant": self.constant,
            "variant": self.variant.value,
            "residual": self.residual,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    @classmethod
    def from_dict(cls, data: dict) -> ExpansionCoefficients:
        return cls(
            prefactor=float(data["prefactor"]),
            leading_power=float(data.get("leading_power", 0.0)),
            powers={float(k): float(v) for k, v in data["powers"].items()},
            log_coefficient=float(data.get("log_coefficient", 0.0)),
            log_argument_scale=float(data.get("log_argument_scale", 1.0)),
            constant=float(data.get("constant", 0.0)),
            variant=Variant(data.get("variant", "printed")),
            residual=data.get("residual"),
        )


# -- concentric spheres, expansion in mu --------------------------------------

EM_MU_PRINTED = ExpansionCoefficients(
    prefactor=1.0,
    powers={-3.0: PI**4 / 360.0, -1.0: PI**2 / 12.0, 1.0: 11.0 / 120.0},
    log_coefficient=0.5,
    log_argument_scale=1.0 / PI,
    constant=-ZETA3 / (4.0 * PI**2),
    variant=Variant.PRINTED,
)

EM_MU_FITTED = replace(
    EM_MU_PRINTED,
    powers={-3.0: PI**4 / 360.0, -1.0: -(PI**2) / 12.0, 1.0: 11.0 / 120.0},
    log_coefficient=-0.5,
    variant=Variant.FITTED,
)

# -- sphere-plate, expansion in x = d/R ----------------------------------------

EM_BRACKET = {
    0.0: 1.0,
    1.0: 0.25 - 60.0 / PI**2,
    2.0: 132.0 / PI**4 - 7.0 / 480.0 - 5.0 / PI**2,
    2.5: 30.0 * SQRT2 / PI**4,
    3.0: 457.0 / 120960.0 - 11.0 / PI**4 + 17.0 / (24.0 * PI**2),
    3.5: -11.0 / (SQRT2 * PI**4),
}

EM_SPHERE_PLATE_PRINTED = ExpansionCoefficients(
    prefactor=EM_LEADING,
    leading_power=-1.5,
    powers=dict(EM_BRACKET),
    log_coefficient=0.25,
    log_argument_scale=2.0 / PI**2,
    constant=ZETA3 / (4.0 * PI**2),
    variant=Variant.PRINTED,
)

EM_SPHERE_PLATE_FITTED = replace(
    EM_SPHERE_PLATE_PRINTED,
    powers=dict(EM_BRACKET),
    log_coefficient=-0.25,
    constant=-ZETA3 / (4.0 * PI**2),
    variant=Variant.FITTED,
)

DIRICHLET_BRACKET = {
    0.0: 1.0,
    1.0: 0.25,
    2.0: 12.0 / PI**4 - 7.0 / 480.0,
    3.0: 457.0 / 120960.0 - 1.0 / PI**4,
}

# The published Dirichlet form already agrees with the exact series.
DIRICHLET_SPHERE_PLATE = ExpansionCoefficients(
    prefactor=DIRICHLET_LEADING,
    leading_power=-1.5,
    powers=dict(DIRICHLET_BRACKET),
    constant=-ZETA3 / (8.0 * PI**2),
    variant=Variant.PRINTED,
)

PRESETS = {
    "em_mu_printed": EM_MU_PRINTED,
    "em_mu_fitted": EM_MU_FITTED,
    "em_sphere_plate_printed": EM_SPHERE_PLATE_PRINTED,
    "em_sphere_plate_fitted": EM_SPHERE_PLATE_FITTED,
    "dirichlet_sphere_plate": DIRICHLET_SPHERE_PLATE,
}


def presets_json() -> str:
    """All shipped coefficient sets as one JSON document."""
    return json.dumps({k: v.to_dict() for k, v in PRESETS.items()}, indent=2, sort_keys=True)


def em_asymptotic_mu(mu: float, coeffs: ExpansionCoefficients = EM_MU_FITTED) -> EnergyValue:
    """EM energy of concentric spheres for small ``mu``, up to exponentially small terms."""
    mu = require_positive("mu", mu)
    return EnergyValue(coeffs.evaluate(mu))


def em_sphere_plate_expansion(
    x: float, order: float = 3.5, coeffs: ExpansionCoefficients = EM_SPHERE_PLATE_FITTED
) -> EnergyValue:
    """EM sphere-plate energy for small ``x = d/R`` with bracket terms through ``x^order``.

    The logarithmic and constant terms are always included.
    """
    x = require_positive("x", x)
    return EnergyValue(coeffs.evaluate(x, order))


def dirichlet_sphere_plate_expansion(
    x: float, coeffs: ExpansionCoefficients = DIRICHLET_SPHERE_PLATE, order: float | None = None
) -> EnergyValue:
    """Dirichlet-scalar sphere-plate energy for small ``x = d/R``."""
    x = require_positive("x", x)
    return EnergyValue(coeffs.evaluate(x, order))
