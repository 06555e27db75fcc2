"""Nondimensional problem parameters and boundary-condition records."""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass

from squeezeflow.domain.exceptions import ParameterDomainError

PARAMETER_NAMES: tuple[str, ...] = ("S", "A", "M", "Pr", "Nb", "Nt", "Le")
UNCERTAIN_NAMES: tuple[str, ...] = ("S", "A", "M")


def _finite(value: float, name: str) -> float:
    if isinstance(value, bool) or not isinstance(value, int | float):
        raise ParameterDomainError(f"{name} must be a number")
    result = float(value)
    if not math.isfinite(result):
        raise ParameterDomainError(f"{name} must be finite")
    return result


@dataclass(frozen=True)
class FlowParams:
    """One crisp instance of the squeezing-flow problem.

    Args:
        S: Squeeze number (S > 0 squeezing, S < 0 separating)
        A: Suction (A > 0) or injection (A < 0) parameter; f(0) = A
        M: Hartmann number
        Pr: Prandtl number
        Nb: Brownian motion parameter
        Nt: Thermophoresis parameter
        Le: Lewis number
    """

    S: float = 1.0
    A: float = 1.0
    M: float = 1.0
    Pr: float = 1.0
    Nb: float = 0.1
    Nt: float = 0.1
    Le: float = 1.0

    def __post_init__(self) -> None:
        for name in PARAMETER_NAMES:
            object.__setattr__(self, name, _finite(getattr(self, name), name))

    def replace(self, **changes: float) -> FlowParams:
        unknown = set(changes) - set(PARAMETER_NAMES)
        if unknown:
            raise ParameterDomainError(f"unknown parameters: {sorted(unknown)}")
        return dataclasses.replace(self, **changes)

    def require_concentration(self) -> None:
        """The concentration equation divides by Nb."""
        if self.Nb == 0.0:
            raise ParameterDomainError("Nb must be nonzero to solve for concentration")

    def as_dict(self) -> dict[str, float]:
        return {name: getattr(self, name) for name in PARAMETER_NAMES}

    def __str__(self) -> str:
        return ", ".join(f"{k}={v:.6g}" for k, v in self.as_dict().items())


@dataclass(frozen=True)
class FourPointBC:
    """Value and slope at both ends, for u'''' = rhs."""

    value0: float
    slope0: float
    value1: float
    slope1: float

    def __post_init__(self) -> None:
        for name in ("value0", "slope0", "value1", "slope1"):
            object.__setattr__(self, name, _finite(getattr(self, name), name))


@dataclass(frozen=True)
class TwoPointBC:
    """Value at both ends, for u'' = rhs."""

    value0: float
    value1: float

    def __post_init__(self) -> None:
        for name in ("value0", "value1"):
            object.__setattr__(self, name, _finite(getattr(self, name), name))


HOMOGENEOUS_FOUR = FourPointBC(0.0, 0.0, 0.0, 0.0)
HOMOGENEOUS_TWO = TwoPointBC(0.0, 0.0)


def momentum_bc(params: FlowParams) -> FourPointBC:
    """f(0) = A, f'(0) = 0, f(1) = 1/2, f'(1) = 0."""
    return FourPointBC(params.A, 0.0, 0.5, 0.0)


# theta and phi share the wall values 1 at eta=0 and 0 at eta=1
WALL_BC = TwoPointBC(1.0, 0.0)
