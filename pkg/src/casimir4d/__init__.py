"""Exact and approximate Casimir energies of spheres and plates in four dimensions."""

from .base import (
    CasimirError,
    ConvergenceError,
    DomainError,
    EnergyValue,
    FitError,
    InteriorConfigurationError,
    NoExactSolutionError,
    SingularPointError,
    TheoryKind,
)
from .geometry import (
    ConcentricPair,
    ConformalMapParams,
    SpherePlateGeometry,
    SphereSphereGeometry,
    concentric_of_geometry,
    kappa_of_geometry,
    map_concentric_to_eccentric,
    mu_of_sphere_plate,
)
from .spectrum import dirichlet_energy_exact, em_energy_exact, exact_energy, scattering_logdet_energy
from .proximity import HeightProfile, pfa_leading, pfa_quadrature, plane_plane_density
from .gradient import DE4Params, de2_energy, de4_energy, second_order_match
from .asymptotics import em_asymptotic_mu, em_sphere_plate_expansion, dirichlet_sphere_plate_expansion
from .analysis import fit_expansion, fit_log_nntlo, fit_mu_expansion, figure_data, sweep

__version__ = "0.1.0"

__all__ = [
    "CasimirError",
    "ConcentricPair",
    "ConformalMapParams",
    "ConvergenceError",
    "DE4Params",
    "DomainError",
    "EnergyValue",
    "FitError",
    "HeightProfile",
    "InteriorConfigurationError",
    "NoExactSolutionError",
    "SingularPointError",
    "SpherePlateGeometry",
    "SphereSphereGeometry",
    "TheoryKind",
    "concentric_of_geometry",
    "de2_energy",
    "de4_energy",
    "dirichlet_energy_exact",
    "dirichlet_sphere_plate_expansion",
    "em_asymptotic_mu",
    "em_energy_exact",
    "em_sphere_plate_expansion",
    "exact_energy",
    "figure_data",
    "fit_expansion",
    "fit_log_nntlo",
    "fit_mu_expansion",
    "kappa_of_geometry",
    "map_concentric_to_eccentric",
    "mu_of_sphere_plate",
    "pfa_leading",
    "pfa_quadrature",
    "plane_plane_density",
    "scattering_logdet_energy",
    "second_order_match",
    "sweep",
]
