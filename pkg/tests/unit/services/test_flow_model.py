"""Unit tests for the series construction in squeezeflow.services.flow_model."""

from __future__ import annotations

import logging

import numpy as np
import pytest

from squeezeflow.domain.enums import ProfileField
from squeezeflow.domain.exceptions import ParameterDomainError
from squeezeflow.domain.params import HOMOGENEOUS_TWO, FlowParams
from squeezeflow.domain.polynomials import (
    Polynomial,
    max_abs_coefficient,
    poly_diff,
    poly_eval,
)
from squeezeflow.services.flow_model import (
    MAX_ORDER,
    HpmSolution,
    boundary_error,
    evaluate,
    expand,
    expand_to_tolerance,
    make_eta_grid,
    nusselt,
    order0,
    rhs_f,
    rhs_phi,
    rhs_theta,
    shooting_guess,
    validate_eta_grid,
)
from squeezeflow.services.hpm_engine import residual_norm, solve_second_term

GRID = np.linspace(0.0, 1.0, 201)
# weakly nonlinear case whose series terms shrink quickly
MILD = FlowParams(S=0.05, A=0.5, M=0.1, Pr=0.5, Nb=0.05, Nt=0.05, Le=0.5)


def published_theta1(eta: np.ndarray, p: FlowParams) -> np.ndarray:
    """First-order temperature term exactly as printed in the published solution."""
    s, a, pr, nb, nt = p.S, p.A, p.Pr, p.Nb, p.Nt
    return (
        -0.1 * pr * s * eta**5
        + 0.2 * pr * s * a * eta**5
        + 0.25 * pr * s * eta**4
        - 0.5 * pr * s * a * eta**4
        - 0.5 * pr * nb * eta**2
        - 0.5 * pr * nt * eta**2
        - 0.1666667 * pr * s * eta**3
        + 0.0166672 * pr * s * eta
        + 0.5 * pr * nb * eta
        + 0.5 * pr * nt * eta
        - 0.7 * pr * s * a * eta
        + pr * s * a * eta**2
    )


def random_params(rng: np.random.Generator) -> FlowParams:
    return FlowParams(
        S=float(rng.uniform(-2.0, 2.0)),
        A=float(rng.uniform(0.0, 2.0)),
        M=float(rng.uniform(0.0, 2.0)),
        Pr=float(rng.uniform(0.0, 3.0)),
        Nb=float(rng.uniform(0.05, 0.5)),
        Nt=float(rng.uniform(0.05, 0.5)),
        Le=float(rng.uniform(0.0, 3.0)),
    )


# --- order 0 ---


@pytest.mark.parametrize("a", [-1.0, 0.0, 0.5, 1.0, 2.0])
def test_order0_matches_closed_form(a: float) -> None:
    sol = expand(FlowParams(A=a), order=0)
    f0 = sol.f_terms[0]
    expected = (a, 0.0, 0.5 * (3.0 - 6.0 * a), 0.166667 * (-6.0 + 12.0 * a))
    assert f0.coeffs + (0.0,) * (4 - len(f0.coeffs)) == pytest.approx(expected, abs=1e-5)
    assert sol.theta_terms[0] == Polynomial([1.0, -1.0])
    assert sol.phi_terms[0] == Polynomial([1.0, -1.0])
    assert sol.order == 0


def test_order0_needs_no_concentration_parameter() -> None:
    sol = expand(FlowParams(Nb=0.0), order=0)
    assert sol.order == 0


# --- order 1 against the published expressions ---


def test_theta1_matches_published_expression() -> None:
    rng = np.random.default_rng(20240601)
    for _ in range(5):
        p = random_params(rng)
        theta1 = expand(p, order=1, auto_tol=0.0).theta_terms[1]
        diff = poly_eval(theta1, GRID) - published_theta1(GRID, p)
        assert np.max(np.abs(diff)) <= 2e-3


def test_f1_high_power_families_match_published_coefficients() -> None:
    rng = np.random.default_rng(7)
    for _ in range(5):
        p = FlowParams(
            S=float(rng.uniform(0.1, 2.0)),
            A=float(rng.uniform(0.0, 2.0)),
            M=float(rng.uniform(0.0, 2.0)),
        )
        f1 = expand(p, order=1, auto_tol=0.0).f_terms[1]
        a = p.A
        eta7 = -0.01428 - 0.0571 * a**2 + 0.0571 * a
        eta6 = 0.0499 - 0.2 * a + 0.2 * a**2
        assert f1.coefficient(7) / p.S == pytest.approx(eta7, abs=1e-3)
        assert f1.coefficient(6) / p.S == pytest.approx(eta6, abs=1e-3)


def test_f1_derived_coefficients_exact() -> None:
    p = FlowParams(S=0.7, A=1.3, M=0.9)
    f1 = expand(p, order=1, auto_tol=0.0).f_terms[1]
    c = 2.0 * p.A - 1.0
    assert f1.coefficient(7) == pytest.approx(-12.0 * p.S * c**2 / 840.0, abs=1e-12)
    assert f1.coefficient(6) == pytest.approx(0.05 * p.S * c**2, abs=1e-12)
    assert f1.coefficient(5) == pytest.approx((0.2 * p.S + 0.05 * p.M**2) * c, abs=1e-12)


def test_theta1_linear_coefficient_is_one_sixtieth() -> None:
    p = FlowParams(S=1.0, A=0.0, Pr=1.0, Nb=0.1, Nt=0.0)
    theta1 = expand(p, order=1, auto_tol=0.0).theta_terms[1]
    # PrS/60 + Pr(Nb + Nt)/2 - 0.7 PrSA with A = 0
    assert theta1.coefficient(1) == pytest.approx(1.0 / 60.0 + 0.05, abs=1e-12)


def test_phi1_at_half_suction_is_closed_form() -> None:
    p = FlowParams(S=0.8, A=0.5, Le=1.5)
    phi1 = expand(p, order=1, auto_tol=0.0).phi_terms[1]
    les = p.Le * p.S
    expected = Polynomial([0.0, -les / 3.0, les / 2.0, -les / 6.0])
    assert max_abs_coefficient(phi1 - expected) <= 1e-12


def test_order1_nusselt_uses_derived_theta1() -> None:
    p = FlowParams(S=1.0, A=1.0, Pr=1.0, Nb=0.1, Nt=0.1)
    sol = expand(p, order=1, auto_tol=0.0)
    theta1_slope = poly_eval(poly_diff(sol.theta_terms[1], 1), 1.0)
    assert nusselt(sol) == pytest.approx(1.0 - theta1_slope, abs=1e-12)


# --- right-hand sides ---


def test_theta_and_phi_order1_equations_coincide() -> None:
    f0, theta0, phi0 = order0(FlowParams())
    thermal = FlowParams(S=0.6, Pr=1.7, Nb=0.0, Nt=0.0)
    solutal = FlowParams(S=0.6, Le=1.7, Nb=0.3, Nt=0.0)
    theta1 = solve_second_term(rhs_theta(1, [f0], [theta0], [phi0], thermal), HOMOGENEOUS_TWO)
    phi1 = solve_second_term(rhs_phi(1, [f0], [theta0], [phi0], solutal), HOMOGENEOUS_TWO)
    assert max_abs_coefficient(theta1 - phi1) <= 1e-12


def test_rhs_theta_vanishes_without_squeeze_or_nanoparticles() -> None:
    p = FlowParams(S=0.0, Nb=0.0, Nt=0.0)
    f0, theta0, phi0 = order0(p)
    assert rhs_theta(1, [f0], [theta0], [phi0], p).is_zero


def test_rhs_needs_prior_terms() -> None:
    f0, theta0, phi0 = order0(FlowParams())
    with pytest.raises(ValueError):
        rhs_f(2, [f0], FlowParams())
    with pytest.raises(ValueError):
        rhs_theta(0, [f0], [theta0], [phi0], FlowParams())


def test_rhs_phi_rejects_zero_brownian_parameter() -> None:
    p = FlowParams(Nb=0.0)
    f0, theta0, phi0 = order0(p)
    with pytest.raises(ParameterDomainError):
        rhs_phi(1, [f0], [theta0], [phi0], p)
    with pytest.raises(ParameterDomainError):
        expand(p, order=1)


# --- boundary conditions and residuals ---


def test_bc_and_residual_suite_over_random_draws() -> None:
    rng = np.random.default_rng(12345)
    for _ in range(100):
        p = random_params(rng)
        order = int(rng.integers(1, 6))
        sol = expand(p, order=order, auto_tol=0.0)
        assert sol.order == order

        assert boundary_error(sol) <= 1e-10

        f_terms, theta_terms, phi_terms = sol.f_terms, sol.theta_terms, sol.phi_terms
        for k in range(1, order + 1):
            rf = rhs_f(k, f_terms[:k], p)
            rt = rhs_theta(k, f_terms[:k], theta_terms[:k], phi_terms[:k], p)
            rp = rhs_phi(k, f_terms[:k], theta_terms[:k], phi_terms[:k], p)
            for term, n, rhs in ((f_terms[k], 4, rf), (theta_terms[k], 2, rt), (phi_terms[k], 2, rp)):
                assert residual_norm(term, n, rhs) <= 1e-9


# --- exact degeneracies ---


@pytest.mark.parametrize("order", [1, 3, 5])
def test_half_suction_keeps_f_constant(order: int) -> None:
    sol = expand(FlowParams(A=0.5, S=1.3, M=0.7), order=order, auto_tol=0.0)
    assert max_abs_coefficient(sol.f - Polynomial.constant(0.5)) <= 1e-10


def test_zero_prandtl_gives_linear_temperature() -> None:
    sol = expand(FlowParams(Pr=0.0), order=4, auto_tol=0.0)
    assert max_abs_coefficient(sol.theta - Polynomial([1.0, -1.0])) <= 1e-10
    assert nusselt(sol) == pytest.approx(1.0, abs=1e-10)


def test_no_lewis_no_thermophoresis_gives_linear_concentration() -> None:
    sol = expand(FlowParams(Le=0.0, Nt=0.0), order=4, auto_tol=0.0)
    assert max_abs_coefficient(sol.phi - Polynomial([1.0, -1.0])) <= 1e-10


def test_no_squeeze_no_field_keeps_f_cubic() -> None:
    sol = expand(FlowParams(S=0.0, M=0.0, A=1.0), order=3, auto_tol=0.0)
    assert sol.f.degree == 3
    assert all(t.is_zero for t in sol.f_terms[1:])


# --- orders, early stop and validation ---


def test_auto_tol_stops_early_and_records_term_size() -> None:
    sol = expand(MILD, order=MAX_ORDER, auto_tol=1e-6)
    assert sol.order < MAX_ORDER
    assert sol.auto_stopped
    assert sol.last_term_size < 1e-6
    assert sol.requested_order == MAX_ORDER


def test_auto_tol_zero_runs_all_orders() -> None:
    sol = expand(FlowParams(), order=4, auto_tol=0.0)
    assert sol.order == 4
    assert not sol.auto_stopped


def test_expand_to_tolerance() -> None:
    sol = expand_to_tolerance(MILD, 1e-6)
    assert sol.last_term_size < 1e-6
    with pytest.raises(ParameterDomainError):
        expand_to_tolerance(FlowParams(), 0.0)


def test_cap_without_convergence_logs_warning(caplog: pytest.LogCaptureFixture) -> None:
    caplog.set_level(logging.WARNING)
    sol = expand(FlowParams(), order=MAX_ORDER, auto_tol=1e-300)
    assert sol.order == MAX_ORDER
    assert "auto_tol" in caplog.text


@pytest.mark.parametrize("order", [-1, MAX_ORDER + 1, 2.0, True])
def test_expand_rejects_bad_order(order: object) -> None:
    with pytest.raises(ParameterDomainError):
        expand(FlowParams(), order=order)  # type: ignore[arg-type]


def test_expand_rejects_negative_tolerance() -> None:
    with pytest.raises(ParameterDomainError):
        expand(FlowParams(), order=1, auto_tol=-1.0)


def test_truncated_shares_terms() -> None:
    sol = expand(FlowParams(), order=3, auto_tol=0.0)
    low = sol.truncated(1)
    assert low.order == 1
    assert low.f_terms == sol.f_terms[:2]
    assert sol.partial_sum(ProfileField.THETA, 1) == low.theta
    with pytest.raises(ValueError):
        sol.truncated(4)


def test_partial_sum_of_fprime_is_derivative() -> None:
    sol = expand(FlowParams(), order=2, auto_tol=0.0)
    assert sol.partial_sum("fprime") == poly_diff(sol.f, 1)


def test_solution_requires_matching_term_counts() -> None:
    one = (Polynomial.constant(1.0),)
    with pytest.raises(ValueError):
        HpmSolution(FlowParams(), one, one + one, one)


# --- evaluation ---


def test_evaluate_on_grid() -> None:
    sol = expand(FlowParams(), order=3)
    table = evaluate(sol, make_eta_grid(11))
    assert table.f[0] == pytest.approx(1.0, abs=1e-12)
    assert table.f[-1] == pytest.approx(0.5, abs=1e-10)
    assert table.fprime[0] == pytest.approx(0.0, abs=1e-12)
    assert table.theta[0] == pytest.approx(1.0, abs=1e-12)
    assert table.phi[-1] == pytest.approx(0.0, abs=1e-10)
    assert -table.theta_prime[-1] == pytest.approx(nusselt(sol), abs=1e-12)
    np.testing.assert_array_equal(table.column("theta"), table.theta)


@pytest.mark.parametrize(
    "grid",
    [
        [0.0],
        [0.0, 0.5, 0.5, 1.0],
        [0.1, 1.0],
        [0.0, 0.9],
        [0.0, 1.2],
        [0.0, 0.7, 0.3, 1.0],
    ],
)
def test_validate_eta_grid_rejects_bad_grids(grid: list[float]) -> None:
    with pytest.raises(ParameterDomainError):
        validate_eta_grid(grid)


def test_make_eta_grid_needs_two_points() -> None:
    with pytest.raises(ParameterDomainError):
        make_eta_grid(1)


def test_shooting_guess_for_cubic_profile() -> None:
    sol = expand(FlowParams(S=0.0, M=0.0, A=1.0), order=2)
    f2, f3, t1, p1 = shooting_guess(sol)
    assert f2 == pytest.approx(-3.0, abs=1e-12)
    assert f3 == pytest.approx(6.0, abs=1e-12)
