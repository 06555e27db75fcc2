"""Order-by-order linear solves of the homotopy-perturbation expansion.

Each order of the expansion reduces to ``u'''' = rhs`` (momentum) or
``u'' = rhs`` (energy and concentration) with polynomial right-hand sides,
which are solved in closed form by repeated integration plus a boundary fit.
"""

from __future__ import annotations

from squeezeflow.domain.params import FourPointBC, TwoPointBC
from squeezeflow.domain.polynomials import (
    Polynomial,
    max_abs_coefficient,
    poly_antideriv,
    poly_diff,
    poly_eval,
)

RESIDUAL_TOLERANCE = 1e-9


def solve_quartic_term(rhs: Polynomial, bc: FourPointBC) -> Polynomial:
    """Solve u'''' = rhs with value and slope fixed at eta=0 and eta=1."""
    particular = poly_antideriv(rhs, 4)
    # particular and its first three derivatives vanish at eta=0
    c0 = bc.value0
    c1 = bc.slope0
    # remaining system at eta=1 in the {eta^2, eta^3} basis: [[1, 1], [2, 3]]
    r1 = bc.value1 - c0 - c1 - poly_eval(particular, 1.0)
    r2 = bc.slope1 - c1 - poly_eval(poly_diff(particular, 1), 1.0)
    c3 = r2 - 2.0 * r1
    c2 = r1 - c3
    return particular + Polynomial([c0, c1, c2, c3])


def solve_second_term(rhs: Polynomial, bc: TwoPointBC) -> Polynomial:
    """Solve u'' = rhs with values fixed at eta=0 and eta=1."""
    particular = poly_antideriv(rhs, 2)
    c0 = bc.value0
    c1 = bc.value1 - c0 - poly_eval(particular, 1.0)
    return particular + Polynomial([c0, c1])


def residual_norm(u: Polynomial, order: int, rhs: Polynomial) -> float:
    """Max-abs coefficient of u^(order) − rhs."""
    if order not in (2, 4):
        raise ValueError("order must be 2 or 4")
    return max_abs_coefficient(poly_diff(u, order) - rhs)


def four_point_error(u: Polynomial, bc: FourPointBC) -> float:
    """Largest violation of the four momentum boundary conditions."""
    du = poly_diff(u, 1)
    return max(
        abs(poly_eval(u, 0.0) - bc.value0),
        abs(poly_eval(du, 0.0) - bc.slope0),
        abs(poly_eval(u, 1.0) - bc.value1),
        abs(poly_eval(du, 1.0) - bc.slope1),
    )


def two_point_error(u: Polynomial, bc: TwoPointBC) -> float:
    return max(
        abs(poly_eval(u, 0.0) - bc.value0),
        abs(poly_eval(u, 1.0) - bc.value1),
    )
