import math

import mpmath
import numpy as np
import pytest
import scipy.sparse as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from casimir4d.base import ConvergenceError, DomainError, NoExactSolutionError, TheoryKind
from casimir4d.geometry import ConcentricPair
from casimir4d.spectrum import (
    dirichlet_energy_exact,
    em_energy_exact,
    exact_energy,
    log1mexp,
    logdet,
    mode_degeneracy,
    mode_indices,
    scattering_logdet_energy,
    scattering_matrix,
    translation_matrix,
    truncation_bound,
)
from casimir4d.validation import k_sum_em

mpmath.mp.dps = 40


def mp_em(rho):
    r = mpmath.mpf(rho)
    return float(mpmath.nsum(lambda n: (n * n - 1) * mpmath.log(1 - r ** (2 * n)), [2, mpmath.inf]))


def mp_dirichlet(rho):
    r = mpmath.mpf(rho)
    return float(mpmath.nsum(lambda n: n * n * mpmath.log(1 - r ** (2 * n)), [1, mpmath.inf]) / 2)


@pytest.mark.parametrize("rho", [1e-3, 0.1, 0.25, 0.5, 0.9, 0.99])
def test_exact_against_mpmath(rho):
    pair = ConcentricPair.from_rho(rho)
    assert em_energy_exact(pair).value == pytest.approx(mp_em(rho), rel=1e-12)
    assert dirichlet_energy_exact(pair).value == pytest.approx(mp_dirichlet(rho), rel=1e-12)


def test_regression_values():
    assert em_energy_exact(ConcentricPair.from_rho(0.5)).value == pytest.approx(-0.414637, abs=1e-5)
    assert em_energy_exact(ConcentricPair.from_rho(0.25)).value == pytest.approx(-0.013949, abs=1e-6)
    assert dirichlet_energy_exact(ConcentricPair.from_rho(0.5)).value == pytest.approx(-0.39391, abs=1e-5)
    assert dirichlet_energy_exact(ConcentricPair.from_rho(0.25)).value == pytest.approx(-0.041331, abs=1e-6)
    # frozen from the verified run
    assert em_energy_exact(ConcentricPair.from_rho(0.5)).value == pytest.approx(-0.41463715855683297, rel=1e-13)


@pytest.mark.parametrize("rho", [0.3, 0.5, 0.8])
def test_k_sum_agrees(rho):
    assert em_energy_exact(ConcentricPair.from_rho(rho)).value == pytest.approx(k_sum_em(rho), rel=1e-10)


def test_small_rho_limit():
    assert em_energy_exact(ConcentricPair.from_rho(1e-8)).value == pytest.approx(3 * -(1e-8**4), rel=1e-6)
    assert abs(dirichlet_energy_exact(ConcentricPair.from_rho(1e-8)).value) < 1e-15


def test_neumann_has_no_exact_solution():
    with pytest.raises(NoExactSolutionError, match="no exact solution"):
        exact_energy(ConcentricPair.from_rho(0.5), TheoryKind.NEUMANN)
    assert exact_energy(ConcentricPair.from_rho(0.5), "em").value == em_energy_exact(ConcentricPair.from_rho(0.5)).value


def test_convergence_error():
    with pytest.raises(ConvergenceError):
        em_energy_exact(ConcentricPair.from_mu(1e-5), max_terms=1000)


def test_fixed_nmax():
    e = em_energy_exact(ConcentricPair.from_rho(0.5), n_max=2)
    assert e.value == pytest.approx(3 * math.log(0.9375), rel=1e-15)
    assert e.n_max == 2
    with pytest.raises(DomainError):
        em_energy_exact(ConcentricPair.from_rho(0.5), n_max=1)
    with pytest.raises(DomainError):
        em_energy_exact(ConcentricPair.from_rho(0.5), tol=0.0)


def test_tail_bound_is_certified():
    pair = ConcentricPair.from_rho(0.5)
    true_tail = abs(em_energy_exact(pair).value - em_energy_exact(pair, n_max=10).value)
    bound = truncation_bound(0.5, 10)
    assert true_tail == pytest.approx(4.0e-5, rel=0.05)
    assert true_tail <= bound <= 10 * true_tail
    assert truncation_bound(1e-6, 10) < 1e-125
    with pytest.raises(DomainError):
        truncation_bound(1.0, 10)


@settings(max_examples=50, deadline=None)
@given(st.floats(0.01, 0.95), st.integers(2, 60))
def test_tail_bound_property(rho, n_max):
    pair = ConcentricPair.from_rho(rho)
    full = mp_em(rho)
    partial = em_energy_exact(pair, n_max=n_max).value
    assert abs(full - partial) <= truncation_bound(rho, n_max) * (1 + 1e-9) + 1e-15


def test_log1mexp_against_mpmath():
    t = np.array([1e-12, 1e-5, 0.3, 0.69, 0.7, 5.0, 50.0])
    got = log1mexp(t)
    for ti, gi in zip(t, got):
        assert gi == pytest.approx(float(mpmath.log(1 - mpmath.exp(-mpmath.mpf(ti)))), rel=1e-14)


@settings(max_examples=60, deadline=None)
@given(st.floats(0.01, 0.98), st.floats(0.01, 0.98))
def test_energies_negative_and_monotone(a, b):
    lo, hi = sorted((a, b))
    if hi - lo < 1e-6:
        return
    for fn in (em_energy_exact, dirichlet_energy_exact):
        f_lo, f_hi = fn(ConcentricPair.from_rho(lo)).value, fn(ConcentricPair.from_rho(hi)).value
        assert f_lo < 0 and f_hi < 0
        assert f_hi < f_lo


def test_mode_bookkeeping():
    assert [mode_degeneracy(n) for n in (2, 3, 4)] == [6, 16, 30]
    idx = mode_indices(5)
    assert len(idx) == sum(mode_degeneracy(n) for n in range(2, 6))
    with pytest.raises(DomainError):
        mode_degeneracy(1)


def test_operators():
    idx = mode_indices(4)
    t = scattering_matrix(idx)
    assert (t != -sp.identity(len(idx))).nnz == 0
    u = translation_matrix(idx, 0.5)
    np.testing.assert_allclose(u.diagonal(), 0.5 ** idx[:, 0].astype(float))


def test_logdet_paths_agree():
    rng = np.random.default_rng(1)
    a = np.eye(30) + 0.1 * rng.normal(size=(30, 30))
    dense = logdet(a)
    sparse = logdet(sp.csc_matrix(a))
    assert dense == pytest.approx(sparse, rel=1e-12)
    assert dense == pytest.approx(np.linalg.slogdet(a)[1], rel=1e-12)
    d = sp.diags([0.5, 0.25, 2.0])
    assert logdet(d) == pytest.approx(math.log(0.25), rel=1e-15)


def brute_force_logdet(rho, n_max):
    # dense 1 - T U T U with explicit index enumeration
    idx = mode_indices(n_max)
    t = scattering_matrix(idx).toarray()
    u = translation_matrix(idx, rho).toarray()
    m = np.eye(len(idx)) - t @ u @ t @ u
    return 0.5 * np.linalg.slogdet(m)[1]


@pytest.mark.parametrize("rho", [0.1, 0.5, 0.8])
def test_scattering_oracle(rho):
    pair = ConcentricPair.from_rho(rho)
    assert scattering_logdet_energy(pair, 8).value == pytest.approx(brute_force_logdet(rho, 8), rel=1e-12)
    assert scattering_logdet_energy(pair, 8).value == pytest.approx(em_energy_exact(pair, n_max=8).value, rel=1e-13)


def test_oracle_equivalence_rho_half():
    pair = ConcentricPair.from_rho(0.5)
    assert abs(scattering_logdet_energy(pair, 50).value - em_energy_exact(pair).value) <= 1e-12
    with pytest.raises(DomainError):
        scattering_logdet_energy(pair, 1)
