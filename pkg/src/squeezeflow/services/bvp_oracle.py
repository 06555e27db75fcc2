"""Independent numerical reference: fixed-step RK4 shooting on the full system.

The state vector is (f, f', f'', f''', theta, theta', phi, phi'); the four
unknown initial values f''(0), f'''(0), theta'(0) and phi'(0) are found by a
damped Newton iteration on the terminal conditions at eta = 1.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from squeezeflow.domain.enums import ProfileField
from squeezeflow.domain.exceptions import (
    IntegrationBlowUpError,
    ParameterDomainError,
    ShootingConvergenceError,
    SingularJacobianError,
)
from squeezeflow.domain.params import FlowParams
from squeezeflow.domain.polynomials import FloatArray
from squeezeflow.services.flow_model import (
    DEFAULT_AUTO_TOL,
    DEFAULT_ORDER,
    HpmSolution,
    evaluate,
    expand,
    nusselt,
    shooting_guess,
)

logger = logging.getLogger(__name__)

DEFAULT_STEPS = 400
MIN_STEPS = 100
SHOOT_TOLERANCE = 1e-8
MAX_NEWTON_ITERATIONS = 50
MAX_HALVINGS = 8
FD_RELATIVE = 1e-6
FD_ABSOLUTE = 1e-8

COMPARED_FIELDS = (
    ProfileField.F,
    ProfileField.FPRIME,
    ProfileField.THETA,
    ProfileField.PHI,
)


@dataclass(frozen=True, eq=False)
class OracleSolution:
    """RK4 trajectory on a uniform grid plus the shooting diagnostics."""

    params: FlowParams
    eta_grid: FloatArray
    f: FloatArray
    fprime: FloatArray
    theta: FloatArray
    theta_prime: FloatArray
    phi: FloatArray
    shoot_unknowns: tuple[float, float, float, float]
    terminal_residuals: tuple[float, float, float, float]
    iterations: int = 0

    @property
    def nusselt(self) -> float:
        return -float(self.theta_prime[-1]) + 0.0

    @property
    def max_residual(self) -> float:
        return max(abs(r) for r in self.terminal_residuals)

    def column(self, name: ProfileField | str) -> FloatArray:
        return getattr(self, ProfileField(name).value)  # type: ignore[no-any-return]


@dataclass(frozen=True)
class FieldError:
    max_abs: float
    rms: float


@dataclass(frozen=True)
class ComparisonReport:
    """HPM-vs-oracle differences over the oracle grid."""

    order: int
    errors: dict[str, FieldError]
    nusselt_diff: float

    def max_abs(self, name: ProfileField | str) -> float:
        return self.errors[ProfileField(name).value].max_abs

    def as_dict(self) -> dict[str, object]:
        return {
            "order": self.order,
            "errors": {
                name: {"max_abs": err.max_abs, "rms": err.rms}
                for name, err in self.errors.items()
            },
            "nusselt_diff": self.nusselt_diff,
        }


def _derivatives(eta: float, y: FloatArray, params: FlowParams) -> FloatArray:
    f, f1, f2, f3, th, th1, ph, ph1 = y
    s = params.S
    f4 = s * (eta * f3 + 3.0 * f2 - 2.0 * f * f3) + params.M**2 * f2
    th2 = (
        -params.Pr * s * (2.0 * f * th1 - eta * th1)
        - params.Pr * params.Nb * th1 * ph1
        - params.Pr * params.Nt * th1 * th1
    )
    ph2 = -params.Le * s * (2.0 * f * ph1 - eta * ph1) - (params.Nt / params.Nb) * th2
    return np.array([f1, f2, f3, f4, th1, th2, ph1, ph2])


def _rk4(params: FlowParams, y0: FloatArray, steps: int) -> FloatArray:
    """Classical RK4 from eta=0 to eta=1; returns the (steps + 1, 8) trajectory."""
    h = 1.0 / steps
    trajectory = np.empty((steps + 1, len(y0)))
    trajectory[0] = y0
    y = y0
    for i in range(steps):
        eta = i * h
        k1 = _derivatives(eta, y, params)
        k2 = _derivatives(eta + 0.5 * h, y + 0.5 * h * k1, params)
        k3 = _derivatives(eta + 0.5 * h, y + 0.5 * h * k2, params)
        k4 = _derivatives(eta + h, y + h * k3, params)
        y = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        if not np.all(np.isfinite(y)):
            raise IntegrationBlowUpError((i + 1) * h, y)
        trajectory[i + 1] = y
    return trajectory


def initial_state(params: FlowParams, unknowns: Sequence[float]) -> FloatArray:
    u1, u2, u3, u4 = (float(u) for u in unknowns)
    return np.array([params.A, 0.0, u1, u2, 1.0, u3, 1.0, u4])


def _terminal_residuals(end: FloatArray) -> FloatArray:
    return np.array([end[0] - 0.5, end[1], end[4], end[6]])


def integrate_ivp(
    params: FlowParams,
    unknowns: Sequence[float],
    steps: int = DEFAULT_STEPS,
) -> OracleSolution:
    """Integrate the initial-value problem for one set of unknown initial slopes."""
    if steps < MIN_STEPS:
        raise ParameterDomainError(f"steps must be at least {MIN_STEPS}")
    if len(unknowns) != 4:
        raise ParameterDomainError("exactly four shooting unknowns are required")
    params.require_concentration()

    trajectory = _rk4(params, initial_state(params, unknowns), steps)
    residuals = _terminal_residuals(trajectory[-1])
    return OracleSolution(
        params=params,
        eta_grid=np.linspace(0.0, 1.0, steps + 1),
        f=trajectory[:, 0],
        fprime=trajectory[:, 1],
        theta=trajectory[:, 4],
        theta_prime=trajectory[:, 5],
        phi=trajectory[:, 6],
        shoot_unknowns=tuple(float(u) for u in unknowns),  # type: ignore[arg-type]
        terminal_residuals=tuple(float(r) for r in residuals),  # type: ignore[arg-type]
    )


def _residual_vector(
    params: FlowParams, unknowns: FloatArray, steps: int
) -> FloatArray:
    end = _rk4(params, initial_state(params, unknowns), steps)[-1]
    return _terminal_residuals(end)


def _jacobian(
    params: FlowParams, unknowns: FloatArray, base: FloatArray, steps: int
) -> FloatArray:
    """Forward-difference Jacobian of the terminal residuals."""
    jac = np.empty((4, 4))
    for j in range(4):
        step = max(FD_RELATIVE * abs(unknowns[j]), FD_ABSOLUTE)
        shifted = unknowns.copy()
        shifted[j] += step
        jac[:, j] = (_residual_vector(params, shifted, steps) - base) / step
    return jac


def default_guess(params: FlowParams) -> tuple[float, float, float, float]:
    """Initial slopes read off the default-order series."""
    return shooting_guess(expand(params, DEFAULT_ORDER, DEFAULT_AUTO_TOL))


def shoot(
    params: FlowParams,
    guess: Sequence[float] | None = None,
    steps: int = DEFAULT_STEPS,
    tol: float = SHOOT_TOLERANCE,
    max_iterations: int = MAX_NEWTON_ITERATIONS,
) -> OracleSolution:
    """Solve the boundary-value problem by damped Newton shooting.

    Raises:
        SingularJacobianError: the finite-difference Jacobian is singular.
        ShootingConvergenceError: residuals stay above tol after max_iterations.
    """
    params.require_concentration()
    if steps < MIN_STEPS:
        raise ParameterDomainError(f"steps must be at least {MIN_STEPS}")

    unknowns = np.array(default_guess(params) if guess is None else guess, dtype=float)
    if unknowns.shape != (4,):
        raise ParameterDomainError("exactly four shooting unknowns are required")
    residual = _residual_vector(params, unknowns, steps)
    norm = float(np.max(np.abs(residual)))

    iterations = 0
    while norm > tol:
        if iterations >= max_iterations:
            raise ShootingConvergenceError(iterations, residual)
        iterations += 1

        jac = _jacobian(params, unknowns, residual, steps)
        try:
            delta = np.linalg.solve(jac, -residual)
        except np.linalg.LinAlgError as exc:
            raise SingularJacobianError(
                f"singular shooting Jacobian at unknowns {unknowns.tolist()}"
            ) from exc

        damping = 1.0
        trial, trial_residual, trial_norm = unknowns, residual, math.inf
        for _ in range(MAX_HALVINGS + 1):
            trial = unknowns + damping * delta
            try:
                trial_residual = _residual_vector(params, trial, steps)
                trial_norm = float(np.max(np.abs(trial_residual)))
            except IntegrationBlowUpError:
                trial_norm = math.inf
            if math.isfinite(trial_norm) and trial_norm < norm:
                break
            damping *= 0.5
        else:
            if not math.isfinite(trial_norm):
                raise ShootingConvergenceError(iterations, residual)
            logger.warning(
                "newton iteration %d: no decrease after %d halvings (residual %.3e)",
                iterations,
                MAX_HALVINGS,
                norm,
            )

        unknowns, residual, norm = trial, trial_residual, trial_norm
        logger.debug("newton iteration %d: residual %.3e", iterations, norm)

    logger.info(
        "shooting converged in %d iterations (residual %.2e) for %s",
        iterations,
        norm,
        params,
    )
    solution = integrate_ivp(params, unknowns, steps)
    return OracleSolution(
        params=solution.params,
        eta_grid=solution.eta_grid,
        f=solution.f,
        fprime=solution.fprime,
        theta=solution.theta,
        theta_prime=solution.theta_prime,
        phi=solution.phi,
        shoot_unknowns=solution.shoot_unknowns,
        terminal_residuals=solution.terminal_residuals,
        iterations=iterations,
    )


def compare(hpm: HpmSolution, oracle: OracleSolution) -> ComparisonReport:
    """Max-abs and RMS differences on the oracle grid, plus the Nusselt gap."""
    if hpm.params != oracle.params:
        raise ParameterDomainError("series and oracle were computed for different parameters")
    table = evaluate(hpm, oracle.eta_grid)
    errors: dict[str, FieldError] = {}
    for name in COMPARED_FIELDS:
        diff = table.column(name) - oracle.column(name)
        errors[name.value] = FieldError(
            max_abs=float(np.max(np.abs(diff))),
            rms=float(np.sqrt(np.mean(diff**2))),
        )
    return ComparisonReport(
        order=hpm.order,
        errors=errors,
        nusselt_diff=abs(nusselt(hpm) - oracle.nusselt),
    )


def convergence_study(
    params: FlowParams,
    max_order: int = DEFAULT_ORDER,
    steps: int = DEFAULT_STEPS,
    auto_tol: float = DEFAULT_AUTO_TOL,
    oracle: OracleSolution | None = None,
) -> tuple[OracleSolution, list[ComparisonReport]]:
    """Compare series orders 1..max_order (or the auto-stop order) with one oracle run."""
    full = expand(params, max_order, auto_tol)
    if oracle is None:
        oracle = shoot(params, shooting_guess(full), steps=steps)
    reports = [compare(full.truncated(k), oracle) for k in range(1, full.order + 1)]
    return oracle, reports
