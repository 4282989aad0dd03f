import math

import pytest

from casimir4d import gradient as G
from casimir4d.base import DomainError, TheoryKind
from casimir4d.proximity import pfa_leading, plane_plane_density

PI = math.pi


def test_kernel_at_zero_momentum():
    assert G.assemble_full_kernel("em", 0.0, 1.0) == pytest.approx(-PI**2 / 120, rel=1e-15)
    assert G.assemble_full_kernel("dirichlet", 0.0, 1.0) == pytest.approx(-PI**2 / 240, rel=1e-15)


@pytest.mark.parametrize("theory", list(TheoryKind))
@pytest.mark.parametrize("d", [1.0, 2.5])
def test_delta_by_finite_differences(theory, d):
    h = 1e-4
    g0 = G.assemble_full_kernel(theory, 0.0, d)
    gh = G.assemble_full_kernel(theory, h, d)
    m = G.second_order_match(theory, d)
    assert m.gamma == pytest.approx(g0, rel=1e-15)
    # the cubic term biases the quotient by O(h)
    assert (gh - g0) / h**2 == pytest.approx(m.delta, rel=1e-3)


@pytest.mark.parametrize("theory", [TheoryKind.EM, TheoryKind.DIRICHLET])
def test_gamma_is_half_second_derivative_of_pp(theory):
    d, h = 1.3, 1e-3
    f = lambda t: plane_plane_density(t, theory)  # noqa: E731
    fd = (f(d + h) - 2 * f(d) + f(d - h)) / h**2
    assert 2 * G.second_order_match(theory, d).gamma == pytest.approx(fd, rel=1e-5)
    ok, residual = G.pp_consistency_check(theory, d)
    assert ok and residual <= 1e-14


def test_first_order_coefficient_is_derivative():
    d, h = 0.7, 1e-6
    fd = (plane_plane_density(d + h) - plane_plane_density(d - h)) / (2 * h)
    assert G.first_order_coefficient("em", d) == pytest.approx(fd, rel=1e-8)


def test_beta_values():
    em = G.second_order_match(TheoryKind.EM)
    assert em.beta == pytest.approx(2 / 3 * (1 - 15 / PI**2), abs=1e-12)
    assert em.beta == pytest.approx(-0.3465452, abs=1e-7)
    assert em.cubic_present
    dr = G.second_order_match(TheoryKind.DIRICHLET)
    assert dr.beta == pytest.approx(2 / 3, abs=1e-12) and not dr.cubic_present
    assert G.ntlo_coefficient(dr.beta) == pytest.approx(0.25, abs=1e-12)
    ne = G.second_order_match(TheoryKind.NEUMANN)
    assert ne.beta == pytest.approx(2 / 3 - 20 / PI**2, abs=1e-12) and ne.cubic_present
    # beta does not depend on d
    assert G.second_order_match("em", 3.0).beta == pytest.approx(em.beta, rel=1e-14)


def test_ntlo_matches_asymptotic_bracket():
    assert G.ntlo_coefficient(G.second_order_match("em").beta) == pytest.approx(0.25 - 60 / PI**2, rel=1e-14)


def test_de2():
    x = 0.002
    expected = pfa_leading(x).value * (1 + (0.25 - 60 / PI**2) * x)
    assert G.de2_energy(x).value == pytest.approx(expected, rel=1e-15)
    assert G.de2_energy(1e-12).value / pfa_leading(1e-12).value == pytest.approx(1, abs=1e-10)
    with pytest.raises(DomainError):
        G.de2_energy(0.0)


def test_de4():
    beta = G.second_order_match("dirichlet").beta
    p = G.DE4Params(beta=beta)
    x = 0.01
    expected = G.de2_energy(x, "dirichlet").value + pfa_leading(x, "dirichlet").value * (
        -15 * (7 / 32 + beta / 2)
    ) * x * x
    assert G.de4_energy(x, p, "dirichlet").value == pytest.approx(expected, rel=1e-14)
    assert G.nntlo_coefficient(G.DE4Params(beta=0.0, beta1=1.0)) == pytest.approx(-435.28125, rel=1e-15)
    with pytest.raises(DomainError):
        G.DE4Params(beta=float("nan"))


def test_beta_table_json():
    import json

    table = json.loads(G.beta_table_json())
    assert set(table) == {"em", "dirichlet", "neumann"}
    assert table["dirichlet"]["cubic_present"] is False
