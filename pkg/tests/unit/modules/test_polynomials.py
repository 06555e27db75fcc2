"""
Unit tests for squeezeflow.domain.polynomials.
"""

from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from squeezeflow.domain.polynomials import (
    ETA,
    Polynomial,
    max_abs_coefficient,
    poly_antideriv,
    poly_combine,
    poly_diff,
    poly_eval,
    poly_mul,
    poly_sum,
    poly_sup_norm,
)

COEFFS = st.lists(
    st.floats(min_value=-10.0, max_value=10.0, allow_nan=False), min_size=0, max_size=8
)
WIDE_COEFFS = st.lists(
    st.floats(min_value=-10.0, max_value=10.0, allow_nan=False), min_size=0, max_size=13
)
SCALARS = st.floats(min_value=-3.0, max_value=3.0, allow_nan=False)


def test_trailing_zeros_are_trimmed() -> None:
    p = Polynomial([1.0, 2.0, 0.0, 0.0])
    assert p.coeffs == (1.0, 2.0)
    assert p.degree == 1
    assert Polynomial([0.0, -0.0]).is_zero
    assert Polynomial.zero().degree == -1


def test_coefficients_are_read_only() -> None:
    p = Polynomial([1.0, 2.0])
    with pytest.raises(ValueError):
        p.array[0] = 5.0


def test_rejects_non_finite_coefficients() -> None:
    with pytest.raises(ValueError):
        Polynomial([1.0, float("nan")])
    with pytest.raises(ValueError):
        Polynomial([[1.0, 2.0]])  # type: ignore[list-item]


def test_monomial_and_coefficient_lookup() -> None:
    p = Polynomial.monomial(3, 2.5)
    assert p.coeffs == (0.0, 0.0, 0.0, 2.5)
    assert p.coefficient(3) == 2.5
    assert p.coefficient(7) == 0.0
    with pytest.raises(ValueError):
        Polynomial.monomial(-1)


def test_evaluation_scalar_and_array() -> None:
    p = Polynomial([1.0, -3.0, 2.0])  # (1 - eta)(1 - 2 eta)
    assert poly_eval(p, 0.5) == 0.0
    assert p(2.0) == 3.0
    grid = np.array([0.0, 1.0])
    np.testing.assert_allclose(p(grid), [1.0, 0.0])
    np.testing.assert_array_equal(poly_eval(Polynomial.zero(), grid), [0.0, 0.0])
    assert poly_eval(Polynomial.zero(), 0.3) == 0.0


def test_arithmetic_operators() -> None:
    p = Polynomial([1.0, 1.0])
    assert p + 1.0 == Polynomial([2.0, 1.0])
    assert 1.0 - p == Polynomial([0.0, -1.0])
    assert -p == Polynomial([-1.0, -1.0])
    assert 2.0 * p == Polynomial([2.0, 2.0])
    assert p * p == Polynomial([1.0, 2.0, 1.0])
    assert p - p == Polynomial.zero()
    assert ETA * ETA == Polynomial.monomial(2)


def test_combine_and_mul_with_zero() -> None:
    z = Polynomial.zero()
    p = Polynomial([3.0, 4.0])
    assert poly_combine(z, z, 1.0, 1.0).is_zero
    assert poly_combine(p, z, 2.0, 5.0) == Polynomial([6.0, 8.0])
    assert poly_combine(z, p, 5.0, -1.0) == Polynomial([-3.0, -4.0])
    assert poly_mul(p, z).is_zero


def test_derivatives() -> None:
    p = Polynomial([1.0, 1.0, 1.0, 1.0])
    assert poly_diff(p, 0) == p
    assert poly_diff(p, 1) == Polynomial([1.0, 2.0, 3.0])
    assert poly_diff(p, 3) == Polynomial.constant(6.0)
    assert poly_diff(p, 4).is_zero
    assert poly_diff(Polynomial.zero(), 2).is_zero
    with pytest.raises(ValueError):
        poly_diff(p, -1)


def test_antiderivative_constants_are_zero() -> None:
    q = poly_antideriv(Polynomial.constant(24.0), 4)
    assert q == Polynomial.monomial(4)
    for k in range(4):
        assert poly_eval(poly_diff(q, k), 0.0) == 0.0
    with pytest.raises(ValueError):
        poly_antideriv(q, -2)


@given(coeffs=WIDE_COEFFS, k=st.integers(min_value=0, max_value=4))
def test_diff_undoes_antideriv(coeffs: list[float], k: int) -> None:
    p = Polynomial(coeffs)
    assert max_abs_coefficient(poly_diff(poly_antideriv(p, k), k) - p) <= 1e-9


@given(a=COEFFS, b=COEFFS, x=st.floats(min_value=0.0, max_value=1.0))
def test_product_evaluates_to_product_of_values(
    a: list[float], b: list[float], x: float
) -> None:
    pa, pb = Polynomial(a), Polynomial(b)
    assert poly_mul(pa, pb)(x) == pytest.approx(pa(x) * pb(x), abs=1e-8)


@given(a=COEFFS, b=COEFFS)
def test_product_is_commutative(a: list[float], b: list[float]) -> None:
    ab = poly_mul(Polynomial(a), Polynomial(b))
    ba = poly_mul(Polynomial(b), Polynomial(a))
    assert max_abs_coefficient(ab - ba) <= 1e-12 * max(1.0, max_abs_coefficient(ab))


@given(a=COEFFS, b=COEFFS, c=COEFFS, cb=SCALARS, cc=SCALARS)
def test_product_distributes_over_combine(
    a: list[float], b: list[float], c: list[float], cb: float, cc: float
) -> None:
    pa, pb, pc = Polynomial(a), Polynomial(b), Polynomial(c)
    lhs = poly_mul(pa, poly_combine(pb, pc, cb, cc))
    ab, ac = poly_mul(pa, pb), poly_mul(pa, pc)
    rhs = poly_combine(ab, ac, cb, cc)
    scale = max(1.0, max_abs_coefficient(ab), max_abs_coefficient(ac)) * 10.0
    assert max_abs_coefficient(lhs - rhs) <= 1e-12 * scale


@given(coeffs=COEFFS, x=st.floats(min_value=0.0, max_value=1.0))
def test_derivative_matches_central_difference(coeffs: list[float], x: float) -> None:
    p = Polynomial(coeffs)
    dp = poly_diff(p, 1)
    h = 1e-5
    numeric = (p(x + h) - p(x - h)) / (2.0 * h)
    # sum of |coefficients| bounds |p'| on [0, 1]
    scale = max(1.0, float(np.sum(np.abs(dp.array))))
    assert abs(numeric - dp(x)) <= 1e-6 * scale


def test_norms_and_sum() -> None:
    p = Polynomial([0.0, -2.0])
    assert poly_sup_norm(p) == 2.0
    assert poly_sup_norm(Polynomial.zero()) == 0.0
    assert max_abs_coefficient(Polynomial([1.0, -5.0, 2.0])) == 5.0
    assert max_abs_coefficient(Polynomial.zero()) == 0.0
    assert poly_sum([ETA, ETA, Polynomial.constant(1.0)]) == Polynomial([1.0, 2.0])
    assert poly_sum([]).is_zero


def test_equality_and_hash() -> None:
    a = Polynomial([1.0, 2.0, 0.0])
    b = Polynomial([1.0, 2.0])
    assert a == b
    assert hash(a) == hash(b)
    assert a != "not a polynomial"
