"""Conformal geometry of two exterior three-spheres.

Any pair of non-overlapping three-spheres in E^4 (and a three-sphere facing a
three-plane) is the image of two concentric spheres of radii ``r_minus`` and
``r_plus`` under the special conformal map

    r' / r'^2 = (r + R) / |r + R|^2 - R / (2 R^2)

with ``r_minus < |R| < r_plus``.  Only the radii ratio ``rho = r_minus/r_plus``
survives, and it is fixed by the invariant ``kappa = (rho + 1/rho) / 2``.

All lengths are dimensionless; any common unit cancels.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .base import DomainError, InteriorConfigurationError, SingularPointError, require_positive


@dataclass(frozen=True)
class SphereSphereGeometry:
    r1: float
    r2: float
    gap: float

    def __post_init__(self):
        for name in ("r1", "r2", "gap"):
            object.__setattr__(self, name, require_positive(name, getattr(self, name)))

    @property
    def center_distance(self) -> float:
        return self.gap + self.r1 + self.r2


@dataclass(frozen=True)
class SpherePlateGeometry:
    radius: float
    gap: float

    def __post_init__(self):
        object.__setattr__(self, "radius", require_positive("radius", self.radius))
        object.__setattr__(self, "gap", require_positive("gap", self.gap))

    @property
    def x(self) -> float:
        """Gap in units of the sphere radius."""
        return self.gap / self.radius


@dataclass(frozen=True)
class ConcentricPair:
    """Two concentric spheres, described by ``rho = R-/R+`` and ``mu = -ln rho``.

    Build instances with :meth:`from_rho` or :meth:`from_mu`.  Near contact
    ``mu`` is the accurate coordinate, so energies are evaluated from it.
    """

    rho: float
    mu: float

    def __post_init__(self):
        if not (0.0 < self.rho < 1.0) or not (self.mu > 0.0) or not math.isfinite(self.mu):
            raise DomainError(f"need 0 < rho < 1 and mu > 0, got rho={self.rho!r}, mu={self.mu!r}")
        if abs(self.rho * math.exp(self.mu) - 1.0) > 1e-12:
            raise DomainError("rho and mu are inconsistent")

    @classmethod
    def from_rho(cls, rho: float) -> ConcentricPair:
        rho = float(rho)
        if not (0.0 < rho < 1.0):
            raise DomainError(f"rho must lie in (0, 1), got {rho!r}")
        return cls(rho=rho, mu=-math.log(rho))

    @classmethod
    def from_mu(cls, mu: float) -> ConcentricPair:
        mu = require_positive("mu", mu)
        rho = math.exp(-mu)
        if rho == 0.0:
            raise DomainError(f"mu={mu!r} underflows rho")
        return cls(rho=rho, mu=mu)


@dataclass(frozen=True)
class ConformalMapParams:
    """Parameters of the map carrying concentric spheres to an exterior pair."""

    scale: float
    r_minus: float
    r_plus: float
    axis: tuple[float, float, float, float] = field(default=(1.0, 0.0, 0.0, 0.0))

    def __post_init__(self):
        for name in ("scale", "r_minus", "r_plus"):
            object.__setattr__(self, name, require_positive(name, getattr(self, name)))
        axis = np.asarray(self.axis, dtype=float)
        if axis.shape != (4,):
            raise DomainError("axis must be a four-vector")
        norm = float(np.linalg.norm(axis))
        if norm == 0.0:
            raise DomainError("axis must be non-zero")
        object.__setattr__(self, "axis", tuple(float(a) for a in axis / norm))
        if not self.r_minus < self.r_plus:
            raise DomainError("r_minus must be smaller than r_plus")
        if not self.r_minus < self.scale < self.r_plus:
            raise InteriorConfigurationError(
                "scale outside (r_minus, r_plus) nests one image sphere inside the other; "
                "only exterior configurations are supported"
            )

    @property
    def rho(self) -> float:
        return self.r_minus / self.r_plus

    @property
    def vector(self) -> np.ndarray:
        return self.scale * np.asarray(self.axis)


def _kappa_excess(r1: float, r2: float, gap: float) -> float:
    # kappa - 1 without the cancellation in s^2 - r1^2 - r2^2
    return gap * (gap + 2.0 * r1 + 2.0 * r2) / (2.0 * r1 * r2)


def kappa_of_geometry(geom: SphereSphereGeometry) -> float:
    """Conformal invariant ``(s^2 - R1^2 - R2^2) / (2 R1 R2)``, with s the center distance."""
    return 1.0 + _kappa_excess(geom.r1, geom.r2, geom.gap)


def _mu_of_excess(excess: float) -> float:
    # arccosh(1 + e), accurate for small e
    return math.log1p(excess + math.sqrt(excess * (2.0 + excess)))


def concentric_of_kappa(kappa: float) -> ConcentricPair:
    """Concentric pair with ``(rho + 1/rho) / 2 == kappa``.

    Raises
    ------
    DomainError
        If ``kappa <= 1`` (touching or overlapping spheres).
    """
    kappa = float(kappa)
    if not kappa > 1.0 or not math.isfinite(kappa):
        raise DomainError(f"kappa must exceed 1, got {kappa!r}")
    rho = 1.0 / (kappa + math.sqrt((kappa - 1.0) * (kappa + 1.0)))
    return ConcentricPair(rho=rho, mu=_mu_of_excess(kappa - 1.0))


def concentric_of_geometry(geom: SphereSphereGeometry | SpherePlateGeometry) -> ConcentricPair:
    """Concentric pair conformally equivalent to a sphere-sphere or sphere-plate setup.

    Goes through ``kappa - 1`` directly so that nearly touching configurations
    keep full relative precision in ``mu``.
    """
    if isinstance(geom, SpherePlateGeometry):
        return ConcentricPair.from_mu(mu_of_sphere_plate(geom.x))
    mu = _mu_of_excess(_kappa_excess(geom.r1, geom.r2, geom.gap))
    return ConcentricPair.from_mu(mu)


def mu_of_sphere_plate(x: float) -> float:
    """``mu = ln(1 + x + sqrt(x (2 + x))) = arccosh(1 + x)`` for ``x = d/R``."""
    x = require_positive("x", x)
    return _mu_of_excess(x)


def map_concentric_to_eccentric(params: ConformalMapParams) -> SphereSphereGeometry:
    """Radii and gap of the exterior pair produced by the conformal map.

    The sphere of radius ``r_plus`` becomes sphere 1 and ``r_minus`` becomes
    sphere 2.  As ``scale -> r_plus`` sphere 1 degenerates into a plane.
    """
    R, rm, rp = params.scale, params.r_minus, params.r_plus
    r1 = 4.0 * R * R * rp / ((rp - R) * (rp + R))
    r2 = 4.0 * R * R * rm / ((R - rm) * (R + rm))
    gap = 4.0 * R * R * (rp - rm) / ((R + rp) * (R + rm))
    return SphereSphereGeometry(r1=r1, r2=r2, gap=gap)


def conformal_map_point(r, params: ConformalMapParams) -> np.ndarray:
    """Image of the four-vector ``r`` under the conformal map.

    The inversion pole ``r = -R`` is sent to the origin.  The point ``r = +R``
    is sent to infinity and raises :class:`SingularPointError`.
    """
    r = np.asarray(r, dtype=float)
    if r.shape != (4,):
        raise DomainError("r must be a four-vector")
    R = params.vector
    shifted = r + R
    s2 = float(shifted @ shifted)
    if s2 == 0.0:
        return np.zeros(4)
    w = shifted / s2 - R / (2.0 * params.scale**2)
    w2 = float(w @ w)
    # relative test: w vanishes only at r = +R
    if w2 <= (1e-15 / params.scale) ** 2:
        raise SingularPointError(f"{r.tolist()} is mapped to infinity")
    return w / w2
