"""Homotopy-perturbation series for the squeezing nanofluid system.

The similarity equations on eta in [0, 1] are

    f'''' - S(eta f''' + 3 f'' - 2 f f''') - M^2 f'' = 0
    theta'' + Pr S (2 f theta' - eta theta') + Pr Nb theta' phi' + Pr Nt theta'^2 = 0
    phi'' + Le S (2 f phi' - eta phi') + (Nt / Nb) theta'' = 0

with f(0) = A, f'(0) = 0, f(1) = 1/2, f'(1) = 0, theta(0) = phi(0) = 1 and
theta(1) = phi(1) = 0. The linear parts d^4/deta^4 and d^2/deta^2 are kept on
the left; every order k >= 1 moves the nonlinear remainder of order k - 1 to
the right-hand side and solves with homogeneous boundary conditions.
"""

from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from squeezeflow.domain.enums import ProfileField
from squeezeflow.domain.exceptions import HpmResidualError, ParameterDomainError
from squeezeflow.domain.params import (
    HOMOGENEOUS_FOUR,
    HOMOGENEOUS_TWO,
    WALL_BC,
    FlowParams,
    momentum_bc,
)
from squeezeflow.domain.polynomials import (
    ETA,
    FloatArray,
    Polynomial,
    max_abs_coefficient,
    poly_diff,
    poly_eval,
    poly_sum,
    poly_sup_norm,
)
from squeezeflow.services.hpm_engine import (
    RESIDUAL_TOLERANCE,
    four_point_error,
    residual_norm,
    solve_quartic_term,
    solve_second_term,
    two_point_error,
)

logger = logging.getLogger(__name__)

DEFAULT_ORDER = 3
MAX_ORDER = 10
DEFAULT_AUTO_TOL = 1e-8
BC_TOLERANCE = 1e-10


@dataclass(frozen=True)
class HpmSolution:
    """Series terms for f, theta and phi; partial sums satisfy the full BCs."""

    params: FlowParams
    f_terms: tuple[Polynomial, ...]
    theta_terms: tuple[Polynomial, ...]
    phi_terms: tuple[Polynomial, ...]
    requested_order: int = 0
    auto_stopped: bool = False
    last_term_size: float = field(default=0.0, compare=False)

    def __post_init__(self) -> None:
        lengths = {len(self.f_terms), len(self.theta_terms), len(self.phi_terms)}
        if len(lengths) != 1 or not self.f_terms:
            raise ValueError("f, theta and phi need the same nonzero number of terms")

    @property
    def order(self) -> int:
        return len(self.f_terms) - 1

    def terms(self, name: ProfileField | str) -> tuple[Polynomial, ...]:
        match ProfileField(name):
            case ProfileField.F | ProfileField.FPRIME:
                return self.f_terms
            case ProfileField.THETA:
                return self.theta_terms
            case ProfileField.PHI:
                return self.phi_terms

    def partial_sum(
        self, name: ProfileField | str, upto: int | None = None
    ) -> Polynomial:
        """Sum of terms 0..upto (all terms by default)."""
        terms = self.terms(name)
        stop = len(terms) if upto is None else upto + 1
        total = poly_sum(terms[:stop])
        if ProfileField(name) is ProfileField.FPRIME:
            return poly_diff(total, 1)
        return total

    @cached_property
    def f(self) -> Polynomial:
        return poly_sum(self.f_terms)

    @cached_property
    def theta(self) -> Polynomial:
        return poly_sum(self.theta_terms)

    @cached_property
    def phi(self) -> Polynomial:
        return poly_sum(self.phi_terms)

    def truncated(self, order: int) -> HpmSolution:
        """The same series cut after `order` (no recomputation)."""
        if not 0 <= order <= self.order:
            raise ValueError(f"order must be in [0, {self.order}]")
        return HpmSolution(
            params=self.params,
            f_terms=self.f_terms[: order + 1],
            theta_terms=self.theta_terms[: order + 1],
            phi_terms=self.phi_terms[: order + 1],
            requested_order=order,
        )


@dataclass(frozen=True, eq=False)
class ProfileTable:
    """Partial sums tabulated on an eta grid."""

    eta_grid: FloatArray
    f: FloatArray
    fprime: FloatArray
    theta: FloatArray
    theta_prime: FloatArray
    phi: FloatArray

    def __post_init__(self) -> None:
        validate_eta_grid(self.eta_grid)
        n = len(self.eta_grid)
        for name in ("f", "fprime", "theta", "theta_prime", "phi"):
            if len(getattr(self, name)) != n:
                raise ValueError(f"{name} must have one value per grid point")

    def column(self, name: ProfileField | str) -> FloatArray:
        return getattr(self, ProfileField(name).value)  # type: ignore[no-any-return]


def make_eta_grid(points: int) -> FloatArray:
    if points < 2:
        raise ParameterDomainError("eta grid needs at least two points")
    return np.linspace(0.0, 1.0, points)


def validate_eta_grid(eta_grid: Sequence[float] | FloatArray) -> FloatArray:
    grid = np.asarray(eta_grid, dtype=np.float64)
    if grid.ndim != 1 or len(grid) < 2:
        raise ParameterDomainError("eta grid must be a flat list of at least two points")
    if grid[0] < 0.0 or grid[-1] > 1.0:
        raise ParameterDomainError("eta grid must lie in [0, 1]")
    if grid[0] != 0.0 or grid[-1] != 1.0:
        raise ParameterDomainError("eta grid must start at 0 and end at 1")
    if np.any(np.diff(grid) <= 0.0):
        raise ParameterDomainError("eta grid must be strictly increasing")
    return grid


def _convolve(
    left: Sequence[Polynomial], right: Sequence[Polynomial], n: int
) -> Polynomial:
    """Cauchy-product coefficient sum_{i+j=n} left[i] * right[j]."""
    return poly_sum(left[i] * right[n - i] for i in range(n + 1))


def _require_prior(k: int, *priors: Sequence[Polynomial]) -> None:
    if k < 1:
        raise ValueError("order k must be at least 1")
    for prior in priors:
        if len(prior) < k:
            raise ValueError(f"order {k} needs terms 0..{k - 1}")


def order0(params: FlowParams) -> tuple[Polynomial, Polynomial, Polynomial]:
    """Initial guesses: the linear parts solved with the full boundary conditions."""
    zero = Polynomial.zero()
    f0 = solve_quartic_term(zero, momentum_bc(params))
    theta0 = solve_second_term(zero, WALL_BC)
    phi0 = solve_second_term(zero, WALL_BC)
    return f0, theta0, phi0


def rhs_f(k: int, prior_f: Sequence[Polynomial], params: FlowParams) -> Polynomial:
    """Right-hand side of f_k'''' = rhs."""
    _require_prior(k, prior_f)
    previous = prior_f[k - 1]
    d2 = poly_diff(previous, 2)
    d3 = poly_diff(previous, 3)
    third = [poly_diff(term, 3) for term in prior_f[:k]]
    nonlinear = _convolve(prior_f, third, k - 1)
    rhs = params.S * (ETA * d3 + 3.0 * d2) - 2.0 * params.S * nonlinear
    rhs = rhs + params.M**2 * d2
    if k == 1:
        rhs = rhs - poly_diff(prior_f[0], 4)
    return rhs


def rhs_theta(
    k: int,
    prior_f: Sequence[Polynomial],
    prior_theta: Sequence[Polynomial],
    prior_phi: Sequence[Polynomial],
    params: FlowParams,
) -> Polynomial:
    """Right-hand side of theta_k'' = rhs."""
    _require_prior(k, prior_f, prior_theta, prior_phi)
    n = k - 1
    dtheta = [poly_diff(term, 1) for term in prior_theta[:k]]
    dphi = [poly_diff(term, 1) for term in prior_phi[:k]]
    pr = params.Pr
    convection = 2.0 * _convolve(prior_f, dtheta, n) - ETA * dtheta[n]
    rhs = -pr * params.S * convection
    rhs = rhs - pr * params.Nb * _convolve(dtheta, dphi, n)
    rhs = rhs - pr * params.Nt * _convolve(dtheta, dtheta, n)
    if k == 1:
        rhs = rhs - poly_diff(prior_theta[0], 2)
    return rhs


def rhs_phi(
    k: int,
    prior_f: Sequence[Polynomial],
    prior_theta: Sequence[Polynomial],
    prior_phi: Sequence[Polynomial],
    params: FlowParams,
) -> Polynomial:
    """Right-hand side of phi_k'' = rhs; the convection term uses phi'."""
    params.require_concentration()
    _require_prior(k, prior_f, prior_theta, prior_phi)
    n = k - 1
    dphi = [poly_diff(term, 1) for term in prior_phi[:k]]
    convection = 2.0 * _convolve(prior_f, dphi, n) - ETA * dphi[n]
    rhs = -params.Le * params.S * convection
    rhs = rhs - (params.Nt / params.Nb) * poly_diff(prior_theta[n], 2)
    if k == 1:
        rhs = rhs - poly_diff(prior_phi[0], 2)
    return rhs


def _check_term(name: str, k: int, term: Polynomial, rhs: Polynomial) -> None:
    """Residual and homogeneous-BC self-check; tolerances scale with coefficient size."""
    order = 4 if name == "f" else 2
    residual = residual_norm(term, order, rhs)
    residual_tol = RESIDUAL_TOLERANCE * max(1.0, max_abs_coefficient(rhs))
    if residual > residual_tol:
        raise HpmResidualError(
            f"{name}_{k} residual {residual:.3e} exceeds {residual_tol:.1e}"
        )
    if order == 4:
        bc_error = four_point_error(term, HOMOGENEOUS_FOUR)
    else:
        bc_error = two_point_error(term, HOMOGENEOUS_TWO)
    bc_tol = BC_TOLERANCE * max(1.0, max_abs_coefficient(term))
    if bc_error > bc_tol:
        raise HpmResidualError(f"{name}_{k} boundary error {bc_error:.3e}")


def expand(
    params: FlowParams,
    order: int = DEFAULT_ORDER,
    auto_tol: float = DEFAULT_AUTO_TOL,
) -> HpmSolution:
    """Build the series up to `order`, stopping early once terms fall below auto_tol.

    Args:
        params: Crisp problem instance.
        order: Highest order to compute (0..MAX_ORDER).
        auto_tol: Stop when the newest f/theta/phi terms all stay below this
            value on [0, 1]; 0 disables the early stop.

    Returns:
        HpmSolution holding every computed term.
    """
    if isinstance(order, bool) or not isinstance(order, int):
        raise ParameterDomainError("order must be an integer")
    if not 0 <= order <= MAX_ORDER:
        raise ParameterDomainError(f"order must be in [0, {MAX_ORDER}]")
    if auto_tol < 0:
        raise ParameterDomainError("auto_tol must be non-negative")
    if order >= 1:
        params.require_concentration()

    f0, theta0, phi0 = order0(params)
    f_terms = [f0]
    theta_terms = [theta0]
    phi_terms = [phi0]
    stopped = False
    size = max(poly_sup_norm(f0), poly_sup_norm(theta0), poly_sup_norm(phi0))

    for k in range(1, order + 1):
        rf = rhs_f(k, f_terms, params)
        f_k = solve_quartic_term(rf, HOMOGENEOUS_FOUR)
        _check_term("f", k, f_k, rf)

        rt = rhs_theta(k, f_terms, theta_terms, phi_terms, params)
        theta_k = solve_second_term(rt, HOMOGENEOUS_TWO)
        _check_term("theta", k, theta_k, rt)

        rp = rhs_phi(k, f_terms, theta_terms, phi_terms, params)
        phi_k = solve_second_term(rp, HOMOGENEOUS_TWO)
        _check_term("phi", k, phi_k, rp)

        f_terms.append(f_k)
        theta_terms.append(theta_k)
        phi_terms.append(phi_k)

        size = max(poly_sup_norm(f_k), poly_sup_norm(theta_k), poly_sup_norm(phi_k))
        logger.debug("order %d: newest term size %.3e", k, size)
        if auto_tol > 0 and size < auto_tol:
            stopped = k < order
            break

    if order >= 1 and auto_tol > 0 and size >= auto_tol and order == MAX_ORDER:
        logger.warning(
            "series not below auto_tol=%.1e after %d orders (last term %.3e) at %s",
            auto_tol,
            MAX_ORDER,
            size,
            params,
        )

    return HpmSolution(
        params=params,
        f_terms=tuple(f_terms),
        theta_terms=tuple(theta_terms),
        phi_terms=tuple(phi_terms),
        requested_order=order,
        auto_stopped=stopped,
        last_term_size=size,
    )


def expand_to_tolerance(
    params: FlowParams, auto_tol: float = DEFAULT_AUTO_TOL
) -> HpmSolution:
    """Expand until the newest terms drop below auto_tol, capped at MAX_ORDER."""
    if auto_tol <= 0:
        raise ParameterDomainError("auto_tol must be positive")
    return expand(params, MAX_ORDER, auto_tol)


def evaluate(sol: HpmSolution, eta_grid: Sequence[float] | FloatArray) -> ProfileTable:
    grid = validate_eta_grid(eta_grid)
    dtheta = poly_diff(sol.theta, 1)
    return ProfileTable(
        eta_grid=grid,
        f=poly_eval(sol.f, grid),
        fprime=poly_eval(poly_diff(sol.f, 1), grid),
        theta=poly_eval(sol.theta, grid),
        theta_prime=poly_eval(dtheta, grid),
        phi=poly_eval(sol.phi, grid),
    )


def nusselt(sol: HpmSolution) -> float:
    """Nu = -theta'(1)."""
    return -poly_eval(poly_diff(sol.theta, 1), 1.0) + 0.0


def boundary_error(sol: HpmSolution) -> float:
    """Largest violation of the eight wall conditions by the partial sums."""
    return max(
        four_point_error(sol.f, momentum_bc(sol.params)),
        two_point_error(sol.theta, WALL_BC),
        two_point_error(sol.phi, WALL_BC),
    )


def shooting_guess(sol: HpmSolution) -> tuple[float, float, float, float]:
    """(f''(0), f'''(0), theta'(0), phi'(0)) read off the series."""
    return (
        poly_eval(poly_diff(sol.f, 2), 0.0),
        poly_eval(poly_diff(sol.f, 3), 0.0),
        poly_eval(poly_diff(sol.theta, 1), 0.0),
        poly_eval(poly_diff(sol.phi, 1), 0.0),
    )
