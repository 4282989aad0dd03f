r"""Exact classical Casimir energies of two concentric three-spheres.

Electromagnetic field, perfect-conductor walls::

    F / k_B T = sum_{n >= 2} (n^2 - 1) ln(1 - rho^(2n))

Dirichlet scalar::

    F / k_B T = (1/2) sum_{n >= 1} n^2 ln(1 - rho^(2n))

Through the conformal map these are also the energies of every exterior
sphere-sphere and sphere-plate configuration with the same ``rho``.

:func:`scattering_logdet_energy` evaluates the same EM energy from the
round-trip operator ``1 - U T U T`` over an explicit multipole index set and
serves as an independent check of the closed-form summand.
"""

from __future__ import annotations

import math

import numpy as np
import scipy.sparse as sp
from scipy.sparse.linalg import splu

from .base import (
    ConvergenceError,
    DomainError,
    EnergyValue,
    NoExactSolutionError,
    TheoryKind,
)
from .geometry import ConcentricPair

DEFAULT_TOL = 1e-12
MAX_TERMS = 20_000_000

_LN2 = math.log(2.0)


def log1mexp(t):
    """``ln(1 - exp(-t))`` for ``t > 0`` without cancellation at either end."""
    t = np.asarray(t, dtype=float)
    small = t < _LN2
    out = np.empty_like(t)
    out[small] = np.log(-np.expm1(-t[small]))
    out[~small] = np.log1p(-np.exp(-t[~small]))
    return out


def _n2_tail(mu: float, n_max: int) -> float:
    """Upper bound on sum_{n > n_max} n^2 |ln(1 - q^n)| with q = exp(-2 mu)."""
    q = math.exp(-2.0 * mu)
    one_minus_q = -math.expm1(-2.0 * mu)
    m = n_max + 1
    qm = math.exp(-2.0 * mu * m)
    if qm == 0.0:
        return 0.0
    # sum_{j>=0} (m + j)^2 q^j
    shifted = q * (1.0 + q) / one_minus_q**3 + 2.0 * m * q / one_minus_q**2 + m * m / one_minus_q
    # |ln(1 - y)| <= y / (1 - y), and 1 - q^n >= 1 - q^m for n >= m
    return qm * shifted / (-math.expm1(-2.0 * mu * m))


def truncation_bound(rho: float, n_max: int) -> float:
    """Bound on the EM remainder ``|sum_{n > n_max} (n^2 - 1) ln(1 - rho^(2n))|``."""
    rho = float(rho)
    if not 0.0 < rho < 1.0:
        raise DomainError(f"rho must lie in (0, 1), got {rho!r}")
    if n_max < 1:
        raise DomainError("n_max must be at least 1")
    return _n2_tail(-math.log(rho), int(n_max))


def _series(mu, weights, n_first, weight_scale, tol, max_terms, n_max=None):
    if not tol > 0.0:
        raise DomainError(f"tol must be positive, got {tol!r}")
    fixed = n_max is not None
    if fixed and n_max < n_first:
        raise DomainError(f"n_max must be at least {n_first}")
    if not fixed:
        n_max = max(16, math.ceil(8.0 / mu))
    while True:
        if n_max > max_terms:
            raise ConvergenceError(
                f"tail not certified below tol={tol:g} within {max_terms} terms (mu={mu:g})"
            )
        n = np.arange(n_first, n_max + 1, dtype=float)
        terms = weights(n) * log1mexp(2.0 * mu * n)
        value = math.fsum(terms)
        tail = weight_scale * _n2_tail(mu, n_max)
        if fixed or tail <= tol * abs(value):
            return EnergyValue(value=value, n_max=int(n_max), tail_bound=tail)
        n_max *= 2


def em_energy_exact(
    pair: ConcentricPair, tol: float = DEFAULT_TOL, max_terms: int = MAX_TERMS, n_max: int | None = None
) -> EnergyValue:
    """Exact EM energy ``sum_{n>=2} (n^2 - 1) ln(1 - rho^(2n))`` in units of k_B T.

    The series is summed in ascending ``n`` with exactly rounded accumulation
    until the certified remainder drops below ``tol * |value|``.  Passing
    ``n_max`` sums exactly that many shells instead and only reports the bound.

    Raises
    ------
    ConvergenceError
        If more than ``max_terms`` shells would be needed.
    """
    return _series(pair.mu, lambda n: n * n - 1.0, 2, 1.0, tol, max_terms, n_max)


def dirichlet_energy_exact(
    pair: ConcentricPair, tol: float = DEFAULT_TOL, max_terms: int = MAX_TERMS, n_max: int | None = None
) -> EnergyValue:
    """Exact Dirichlet-scalar energy ``(1/2) sum_{n>=1} n^2 ln(1 - rho^(2n))``."""
    return _series(pair.mu, lambda n: 0.5 * n * n, 1, 0.5, tol, max_terms, n_max)


def exact_energy(pair: ConcentricPair, theory=TheoryKind.EM, tol: float = DEFAULT_TOL, **kwargs) -> EnergyValue:
    theory = TheoryKind.parse(theory)
    if theory is TheoryKind.EM:
        return em_energy_exact(pair, tol, **kwargs)
    if theory is TheoryKind.DIRICHLET:
        return dirichlet_energy_exact(pair, tol, **kwargs)
    raise NoExactSolutionError(
        "no exact solution is known for the Neumann scalar (not conformally invariant)"
    )


# ---------------------------------------------------------------------------
# scattering-operator route


def mode_degeneracy(n: int) -> int:
    """Number of transverse vector harmonics on S^3 at level ``n >= 2``."""
    if n < 2:
        raise DomainError("vector harmonics start at n = 2")
    return 2 * (n * n - 1)


def mode_indices(n_max: int) -> np.ndarray:
    """Enumerate the multipole labels ``(n, l, m, p)`` with ``2 <= n <= n_max``.

    For each ``n`` the label ``l`` runs over ``1..n-1``, ``m`` over ``-l..l``
    and the parity ``p`` over ``{0, 1}``, giving ``2 (n^2 - 1)`` states.
    """
    if n_max < 2:
        raise DomainError("n_max must be at least 2")
    n = np.repeat(np.arange(2, n_max + 1), [n * n - 1 for n in range(2, n_max + 1)])
    l = np.concatenate([np.repeat(np.arange(1, k), 2 * np.arange(1, k) + 1) for k in range(2, n_max + 1)])
    m = np.concatenate([np.arange(-j, j + 1) for k in range(2, n_max + 1) for j in range(1, k)])
    idx = np.stack([n, l, m], axis=1)
    out = np.empty((2 * len(idx), 4), dtype=np.int64)
    out[0::2, :3] = idx
    out[1::2, :3] = idx
    out[0::2, 3] = 0
    out[1::2, 3] = 1
    return out


def scattering_matrix(indices: np.ndarray) -> sp.spmatrix:
    """T-matrix of a perfectly conducting three-sphere: minus the identity."""
    return -sp.identity(len(indices), format="csr")


def translation_matrix(indices: np.ndarray, rho: float) -> sp.spmatrix:
    """Translation between concentric spheres, ``rho^n`` on the diagonal."""
    return sp.diags(rho ** indices[:, 0].astype(float), format="csr")


def logdet(matrix) -> float:
    """Log of the (positive) determinant of a square dense or sparse matrix.

    Diagonal operators are reduced to a sum over the diagonal; everything else
    goes through an LU factorisation.
    """
    if sp.issparse(matrix):
        coo = matrix.tocoo()
        if coo.shape[0] != coo.shape[1]:
            raise DomainError("matrix must be square")
        off = coo.row != coo.col
        if not np.any(coo.data[off]):
            diag = matrix.diagonal()
        else:
            diag = splu(matrix.tocsc()).U.diagonal()
        if np.any(diag == 0):
            return -math.inf
        # caller guarantees det > 0
        return math.fsum(np.log(np.abs(diag)))
    sign, value = np.linalg.slogdet(np.asarray(matrix, dtype=float))
    if sign <= 0:
        raise DomainError("determinant is not positive")
    return float(value)


def scattering_logdet_energy(pair: ConcentricPair, n_max: int) -> EnergyValue:
    """EM energy ``(1/2) ln det(1 - U21 T1 U12 T2)`` truncated at level ``n_max``."""
    if n_max < 2:
        raise DomainError("n_max must be at least 2")
    indices = mode_indices(n_max)
    t = scattering_matrix(indices)
    u = translation_matrix(indices, pair.rho)
    round_trip = u @ t @ u @ t
    m = sp.identity(len(indices), format="csr") - round_trip
    value = 0.5 * logdet(m)
    return EnergyValue(value=value, n_max=n_max, tail_bound=_n2_tail(pair.mu, n_max))
