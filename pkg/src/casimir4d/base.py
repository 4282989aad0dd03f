"""Shared value types and exceptions."""

from __future__ import annotations

import enum
from dataclasses import asdict, dataclass


class CasimirError(Exception):
    """Base class for all errors raised by casimir4d."""


class DomainError(CasimirError, ValueError):
    """An argument lies outside the domain of the requested operation."""


class InteriorConfigurationError(DomainError):
    """The conformal map parameters describe one sphere inside the other."""


class SingularPointError(DomainError):
    """A point is sent to infinity by the conformal map."""


class NoExactSolutionError(DomainError):
    """No exact series is available for the requested theory."""


class ConvergenceError(CasimirError, RuntimeError):
    """A series or quadrature could not be brought within tolerance."""


class FitError(CasimirError):
    """A least-squares fit is rank deficient or too badly conditioned."""


class TheoryKind(str, enum.Enum):
    """Field theory and boundary condition on both surfaces."""

    EM = "em"
    DIRICHLET = "dirichlet"
    NEUMANN = "neumann"

    @classmethod
    def parse(cls, value: TheoryKind | str) -> TheoryKind:
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            names = ", ".join(t.value for t in cls)
            raise DomainError(f"unknown theory {value!r}; expected one of {names}") from None


@dataclass(frozen=True)
class EnergyValue:
    """An energy in units of k_B T.

    ``n_max`` is the last shell included for series results and ``None`` for
    closed-form approximations.  ``tail_bound`` bounds the magnitude of
    everything that was dropped.
    """

    value: float
    n_max: int | None = None
    tail_bound: float = 0.0

    def __float__(self) -> float:
        return float(self.value)

    def to_dict(self) -> dict:
        return asdict(self)


def require_positive(name: str, value: float) -> float:
    value = float(value)
    if not (value > 0.0) or value == float("inf"):
        raise DomainError(f"{name} must be positive and finite, got {value!r}")
    return value
