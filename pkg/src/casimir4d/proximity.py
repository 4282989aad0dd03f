"""Plane-plane energy density and the proximity-force approximation (PFA).

Energies are in units of k_B T; the plane-plane density is per unit
three-volume of the hyperplane.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad

from .base import ConvergenceError, DomainError, EnergyValue, TheoryKind, require_positive

QUAD_RTOL = 1e-9

# F_pp(d) * d^3 per theory; each scalar polarization carries half the EM value
_PP_AMPLITUDE = {
    TheoryKind.EM: -(math.pi**2) / 720.0,
    TheoryKind.DIRICHLET: -(math.pi**2) / 1440.0,
    TheoryKind.NEUMANN: -(math.pi**2) / 1440.0,
}


class ProfileKind(str, enum.Enum):
    PARABOLIC = "parabolic"
    SPHERICAL_CAP = "spherical_cap"


@dataclass(frozen=True)
class HeightProfile:
    """Local surface separation ``H(r_perp)`` of a sphere of radius ``radius`` facing a plane."""

    kind: ProfileKind
    radius: float

    def __post_init__(self):
        object.__setattr__(self, "kind", ProfileKind(self.kind))
        object.__setattr__(self, "radius", require_positive("radius", self.radius))

    def height(self, r, gap: float):
        r = np.asarray(r, dtype=float)
        R = self.radius
        if self.kind is ProfileKind.PARABOLIC:
            return gap + r * r / (2.0 * R)
        if np.any(r > R):
            raise DomainError("spherical cap is only defined for r <= radius")
        # R - sqrt(R^2 - r^2) written without cancellation
        return gap + r * r / (R + np.sqrt((R - r) * (R + r)))


def plane_plane_density(d: float, theory=TheoryKind.EM) -> float:
    """Energy per unit three-volume between two parallel hyperplanes at distance ``d``."""
    d = require_positive("d", d)
    return _PP_AMPLITUDE[TheoryKind.parse(theory)] / d**3


def pfa_leading(x: float, theory=TheoryKind.EM) -> EnergyValue:
    """Closed-form PFA energy of a three-sphere facing a three-plane, ``x = d/R``."""
    x = require_positive("x", x)
    amp = _PP_AMPLITUDE[TheoryKind.parse(theory)]
    # 4 pi (2/x)^(3/2) * (pi/16) * amp
    return EnergyValue(math.pi**2 / 4.0 * (2.0 / x) ** 1.5 * amp)


def pfa_quadrature(profile: HeightProfile, d: float, theory=TheoryKind.EM, rtol: float = QUAD_RTOL) -> EnergyValue:
    """PFA energy ``4 pi int r^2 F_pp(H(r)) dr`` by adaptive quadrature.

    The radius is rescaled as ``r = sqrt(2 R d) t``.  For the paraboloid the
    half-line in ``t`` is folded onto ``[0, 1)`` with ``t = u / (1 - u)``; the
    spherical cap is integrated up to ``r = R``.
    """
    d = require_positive("d", d)
    theory = TheoryKind.parse(theory)
    R = profile.radius
    sigma = math.sqrt(2.0 * R * d)

    def density_weight(t):
        r = sigma * t
        return r * r * plane_plane_density(float(profile.height(r, d)), theory)

    if profile.kind is ProfileKind.PARABOLIC:
        def integrand(u):
            if u >= 1.0:
                return 0.0
            t = u / (1.0 - u)
            return density_weight(t) / (1.0 - u) ** 2

        upper = 1.0
    else:
        integrand = density_weight
        upper = R / sigma

    value, abserr, info = quad(integrand, 0.0, upper, epsabs=0.0, epsrel=rtol, limit=500, full_output=True)[:3]
    if abserr > 10.0 * rtol * abs(value):
        raise ConvergenceError(f"PFA quadrature did not converge (estimated error {abserr:.3g})")
    return EnergyValue(value=4.0 * math.pi * sigma * value, tail_bound=4.0 * math.pi * sigma * abserr)
