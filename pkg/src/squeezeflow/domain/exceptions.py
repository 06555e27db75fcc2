"""Exception hierarchy shared by the solver layers."""

from __future__ import annotations

from collections.abc import Sequence


class SqueezeFlowError(Exception):
    """Base class for every error raised by squeezeflow."""


class IntervalDomainError(SqueezeFlowError, ValueError):
    """Raised for malformed intervals or undefined interval operations."""


class ParameterDomainError(SqueezeFlowError, ValueError):
    """Raised when flow parameters, grids or sweep specs are out of domain."""


class ConfigError(SqueezeFlowError, ValueError):
    """Raised for bad configuration files, unknown keys or usage errors."""


class HpmResidualError(SqueezeFlowError, ArithmeticError):
    """Raised when a stored series term fails its residual self-check."""


class OracleError(SqueezeFlowError, RuntimeError):
    """Base class for numerical oracle failures."""


class IntegrationBlowUpError(OracleError):
    """Raised when the RK4 state stops being finite."""

    def __init__(self, eta: float, state: Sequence[float]) -> None:
        self.eta = eta
        self.state = tuple(float(x) for x in state)
        super().__init__(f"non-finite state at eta={eta:.6g}: {self.state}")


class SingularJacobianError(OracleError):
    """Raised when the shooting Jacobian cannot be inverted."""


class ShootingConvergenceError(OracleError):
    """Raised when Newton shooting exhausts its iteration budget."""

    def __init__(self, iterations: int, residuals: Sequence[float]) -> None:
        self.iterations = iterations
        self.residuals = tuple(float(r) for r in residuals)
        super().__init__(
            f"shooting did not converge after {iterations} iterations; "
            f"terminal residuals {self.residuals}"
        )


class SweepError(SqueezeFlowError, RuntimeError):
    """Raised when one parameter draw of an interval sweep fails."""

    def __init__(self, index: int, draw: object, reason: str) -> None:
        self.index = index
        self.draw = draw
        super().__init__(f"draw {index} ({draw}) failed: {reason}")
