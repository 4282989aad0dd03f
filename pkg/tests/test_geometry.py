import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from casimir4d.base import DomainError, InteriorConfigurationError, SingularPointError
from casimir4d.geometry import (
    ConcentricPair,
    ConformalMapParams,
    SpherePlateGeometry,
    SphereSphereGeometry,
    concentric_of_geometry,
    concentric_of_kappa,
    conformal_map_point,
    kappa_of_geometry,
    map_concentric_to_eccentric,
    mu_of_sphere_plate,
)

PARAMS = ConformalMapParams(scale=1.0, r_minus=0.5, r_plus=2.0)


def test_kappa_examples():
    assert kappa_of_geometry(SphereSphereGeometry(8 / 3, 8 / 3, 4 / 3)) == pytest.approx(2.125, rel=1e-14)
    g = SphereSphereGeometry(1, 1, 1)
    assert g.center_distance == 3
    assert kappa_of_geometry(g) == pytest.approx(3.5, rel=1e-15)
    assert kappa_of_geometry(SphereSphereGeometry(1, 1, 1e-12)) == pytest.approx(1.0, abs=1e-11)


def test_concentric_of_kappa_examples():
    assert concentric_of_kappa(2.125).rho == pytest.approx(0.25, rel=1e-14)
    assert concentric_of_kappa(3.5).rho == pytest.approx(3.5 - math.sqrt(11.25), rel=1e-14)
    assert concentric_of_kappa(1 + 1e-12).rho == pytest.approx(1.0, abs=2e-6)
    for bad in (1.0, 0.5, float("nan"), float("inf")):
        with pytest.raises(DomainError):
            concentric_of_kappa(bad)


def test_geometry_validation():
    with pytest.raises(DomainError):
        SphereSphereGeometry(1, 1, 0)
    with pytest.raises(DomainError):
        SphereSphereGeometry(-1, 1, 1)
    with pytest.raises(DomainError):
        SpherePlateGeometry(1, float("nan"))
    assert SpherePlateGeometry(2.0, 0.5).x == 0.25


def test_concentric_pair_validation():
    with pytest.raises(DomainError):
        ConcentricPair.from_rho(1.0)
    with pytest.raises(DomainError):
        ConcentricPair.from_rho(0.0)
    with pytest.raises(DomainError):
        ConcentricPair(rho=0.5, mu=1.0)
    with pytest.raises(DomainError):
        ConcentricPair.from_mu(1e4)
    p = ConcentricPair.from_mu(0.3)
    assert p.rho == pytest.approx(math.exp(-0.3))


def test_mu_of_sphere_plate_examples():
    assert mu_of_sphere_plate(1.0) == pytest.approx(math.log(2 + math.sqrt(3)), rel=1e-15)
    assert mu_of_sphere_plate(math.cosh(0.2) - 1) == pytest.approx(0.2, rel=1e-14)
    x = 1e-14
    assert mu_of_sphere_plate(x) == pytest.approx(math.sqrt(2 * x), rel=1e-12)
    for bad in (0.0, -1.0):
        with pytest.raises(DomainError):
            mu_of_sphere_plate(bad)


def test_sphere_plate_route_matches_sphere_sphere_limit():
    # a huge second sphere behaves like a plate
    pair_plate = concentric_of_geometry(SpherePlateGeometry(1.0, 0.01))
    pair_big = concentric_of_geometry(SphereSphereGeometry(1.0, 1e9, 0.01))
    assert pair_big.mu == pytest.approx(pair_plate.mu, rel=1e-8)


def test_map_example():
    g = map_concentric_to_eccentric(PARAMS)
    assert (g.r1, g.r2, g.gap) == pytest.approx((8 / 3, 8 / 3, 4 / 3), rel=1e-14)
    # rho is a conformal invariant
    assert concentric_of_geometry(g).rho == pytest.approx(PARAMS.rho, rel=1e-14)


def test_plate_limit():
    radii = [map_concentric_to_eccentric(ConformalMapParams(2.0 - eps, 0.5, 2.0)).r1 for eps in (1e-2, 1e-4, 1e-6)]
    assert radii[0] < radii[1] < radii[2]
    assert radii[2] > 1e5


def test_interior_configuration_rejected():
    with pytest.raises(InteriorConfigurationError):
        ConformalMapParams(scale=3.0, r_minus=0.5, r_plus=2.0)
    with pytest.raises(DomainError):
        ConformalMapParams(scale=1.0, r_minus=2.0, r_plus=0.5)
    with pytest.raises(DomainError):
        ConformalMapParams(1.0, 0.5, 2.0, axis=(0, 0, 0, 0))


def test_map_point_examples():
    np.testing.assert_allclose(conformal_map_point([-1, 0, 0, 0], PARAMS), 0.0)
    np.testing.assert_allclose(conformal_map_point([0.5, 0, 0, 0], PARAMS), [6, 0, 0, 0], rtol=1e-14)
    np.testing.assert_allclose(conformal_map_point([-0.5, 0, 0, 0], PARAMS), [2 / 3, 0, 0, 0], rtol=1e-14)
    np.testing.assert_allclose(conformal_map_point([2, 0, 0, 0], PARAMS), [-6, 0, 0, 0], rtol=1e-14)
    np.testing.assert_allclose(conformal_map_point([-2, 0, 0, 0], PARAMS), [-2 / 3, 0, 0, 0], rtol=1e-14)
    with pytest.raises(SingularPointError):
        conformal_map_point([1, 0, 0, 0], PARAMS)
    with pytest.raises(DomainError):
        conformal_map_point([1, 0, 0], PARAMS)


def _sphere_fit_deviation(points):
    # center is on the axis by symmetry: fit |p - c|^2 = r^2 by linear least squares
    a = np.column_stack([2 * points, np.ones(len(points))])
    b = (points**2).sum(axis=1)
    sol, *_ = np.linalg.lstsq(a, b, rcond=None)
    center = sol[:4]
    radius = math.sqrt(sol[4] + center @ center)
    dev = np.abs(np.linalg.norm(points - center, axis=1) - radius).max() / radius
    return radius, dev


@pytest.mark.parametrize("axis", [(1, 0, 0, 0), (0.3, -0.2, 0.9, 0.1)])
def test_spheres_map_to_spheres(axis):
    params = ConformalMapParams(1.0, 0.5, 2.0, axis=axis)
    geom = map_concentric_to_eccentric(params)
    rng = np.random.default_rng(7)
    for r, expected in ((params.r_minus, geom.r2), (params.r_plus, geom.r1)):
        dirs = rng.normal(size=(200, 4))
        dirs /= np.linalg.norm(dirs, axis=1)[:, None]
        images = np.array([conformal_map_point(r * u, params) for u in dirs])
        radius, dev = _sphere_fit_deviation(images)
        assert dev <= 1e-10
        assert radius == pytest.approx(expected, rel=1e-10)


@settings(max_examples=200, deadline=None)
@given(
    st.floats(1e-3, 1e3),
    st.floats(1e-3, 1e3),
    st.floats(1e-6, 1e3),
)
def test_kappa_rho_round_trip(r1, r2, gap):
    g = SphereSphereGeometry(r1, r2, gap)
    pair = concentric_of_geometry(g)
    kappa = kappa_of_geometry(g)
    assert 0 < pair.rho < 1
    assert (pair.rho + 1 / pair.rho) / 2 == pytest.approx(kappa, rel=1e-10)
    assert math.cosh(pair.mu) - 1 == pytest.approx(kappa - 1, rel=1e-9)


@settings(max_examples=100, deadline=None)
@given(st.floats(0.05, 0.95), st.floats(0.05, 0.95))
def test_forward_map_preserves_rho(frac_rm, frac_scale):
    rp = 2.0
    rm = frac_rm * rp
    scale = rm + frac_scale * (rp - rm)
    params = ConformalMapParams(scale, rm, rp)
    g = map_concentric_to_eccentric(params)
    assert concentric_of_geometry(g).rho == pytest.approx(rm / rp, rel=1e-8)
