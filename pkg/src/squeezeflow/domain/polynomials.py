"""Univariate polynomials in the similarity variable eta.

Coefficients are stored lowest power first and delegated to
``numpy.polynomial.polynomial`` for every operation.
"""

from __future__ import annotations

from collections.abc import Iterable
from typing import overload

import numpy as np
import numpy.typing as npt
from numpy.polynomial import polynomial as npoly

FloatArray = npt.NDArray[np.float64]


class Polynomial:
    """Immutable power-form polynomial; trailing zero coefficients are dropped."""

    __slots__ = ("_coeffs",)

    _coeffs: FloatArray

    def __init__(self, coeffs: Iterable[float] = ()) -> None:
        array = np.asarray(list(coeffs), dtype=np.float64)
        if array.ndim != 1:
            raise ValueError("coeffs must be a flat sequence of numbers")
        if not np.all(np.isfinite(array)):
            raise ValueError("coeffs must be finite")
        array = np.trim_zeros(array, "b") + 0.0  # + 0.0 folds -0.0 into 0.0
        array.setflags(write=False)
        self._coeffs = array

    @classmethod
    def zero(cls) -> Polynomial:
        return cls()

    @classmethod
    def constant(cls, value: float) -> Polynomial:
        return cls([value])

    @classmethod
    def monomial(cls, power: int, coefficient: float = 1.0) -> Polynomial:
        if power < 0:
            raise ValueError("power must be non-negative")
        return cls([0.0] * power + [coefficient])

    @property
    def coeffs(self) -> tuple[float, ...]:
        return tuple(float(c) for c in self._coeffs)

    @property
    def array(self) -> FloatArray:
        """Read-only coefficient array, index = power."""
        return self._coeffs

    @property
    def degree(self) -> int:
        """Highest nonzero power; -1 for the zero polynomial."""
        return len(self._coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return len(self._coeffs) == 0

    def coefficient(self, power: int) -> float:
        return float(self._coeffs[power]) if 0 <= power <= self.degree else 0.0

    def to_list(self) -> list[float]:
        return [float(c) for c in self._coeffs]

    @overload
    def __call__(self, eta: float) -> float: ...

    @overload
    def __call__(self, eta: FloatArray) -> FloatArray: ...

    def __call__(self, eta: float | FloatArray) -> float | FloatArray:
        return poly_eval(self, eta)

    def __add__(self, other: Polynomial | float) -> Polynomial:
        return poly_combine(self, _as_poly(other), 1.0, 1.0)

    __radd__ = __add__

    def __sub__(self, other: Polynomial | float) -> Polynomial:
        return poly_combine(self, _as_poly(other), 1.0, -1.0)

    def __rsub__(self, other: float) -> Polynomial:
        return poly_combine(_as_poly(other), self, 1.0, -1.0)

    def __neg__(self) -> Polynomial:
        return poly_combine(self, Polynomial.zero(), -1.0, 0.0)

    def __mul__(self, other: Polynomial | float) -> Polynomial:
        if isinstance(other, Polynomial):
            return poly_mul(self, other)
        return poly_combine(self, Polynomial.zero(), float(other), 0.0)

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return np.array_equal(self._coeffs, other._coeffs)

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"Polynomial({self.to_list()!r})"


def _as_poly(value: Polynomial | float) -> Polynomial:
    return value if isinstance(value, Polynomial) else Polynomial.constant(value)


ETA = Polynomial.monomial(1)


@overload
def poly_eval(p: Polynomial, eta: float) -> float: ...


@overload
def poly_eval(p: Polynomial, eta: FloatArray) -> FloatArray: ...


def poly_eval(p: Polynomial, eta: float | FloatArray) -> float | FloatArray:
    """Horner evaluation at a point or elementwise over an array."""
    if isinstance(eta, np.ndarray):
        if p.is_zero:
            return np.zeros_like(eta, dtype=np.float64)
        return np.asarray(npoly.polyval(eta, p.array), dtype=np.float64)
    if p.is_zero:
        return 0.0
    return float(npoly.polyval(float(eta), p.array))


def poly_combine(a: Polynomial, b: Polynomial, ca: float, cb: float) -> Polynomial:
    """Coefficientwise ca·a + cb·b."""
    # numpy rejects empty coefficient series
    if b.is_zero:
        return Polynomial(ca * a.array)
    if a.is_zero:
        return Polynomial(cb * b.array)
    return Polynomial(npoly.polyadd(ca * a.array, cb * b.array))


def poly_mul(a: Polynomial, b: Polynomial) -> Polynomial:
    if a.is_zero or b.is_zero:
        return Polynomial.zero()
    return Polynomial(npoly.polymul(a.array, b.array))


def poly_diff(p: Polynomial, k: int = 1) -> Polynomial:
    """k-th derivative."""
    if k < 0:
        raise ValueError("derivative order must be non-negative")
    if k == 0 or p.is_zero:
        return p
    if k > p.degree:
        return Polynomial.zero()
    return Polynomial(npoly.polyder(p.array, m=k))


def poly_antideriv(p: Polynomial, k: int = 1) -> Polynomial:
    """k-fold antiderivative with every integration constant zero."""
    if k < 0:
        raise ValueError("integration order must be non-negative")
    if k == 0 or p.is_zero:
        return p
    return Polynomial(npoly.polyint(p.array, m=k, lbnd=0))


def poly_sup_norm(p: Polynomial, samples: int = 201) -> float:
    """Max |p| over [0, 1], sampled on an even grid including both endpoints."""
    if p.is_zero:
        return 0.0
    grid = np.linspace(0.0, 1.0, samples)
    return float(np.max(np.abs(poly_eval(p, grid))))


def max_abs_coefficient(p: Polynomial) -> float:
    return float(np.max(np.abs(p.array))) if not p.is_zero else 0.0


def poly_sum(terms: Iterable[Polynomial]) -> Polynomial:
    total = Polynomial.zero()
    for term in terms:
        total = total + term
    return total
