"""Closed real intervals and the parametric form used for uncertainty sampling."""

from __future__ import annotations

import math
from collections.abc import Iterable
from dataclasses import dataclass

import numpy as np

from squeezeflow.domain.exceptions import IntervalDomainError


@dataclass(frozen=True)
class Interval:
    """A closed interval [lo, hi]; lo == hi is a crisp value."""

    lo: float
    hi: float

    def __post_init__(self) -> None:
        lo = self._validate_endpoint(self.lo, "lo")
        hi = self._validate_endpoint(self.hi, "hi")
        if lo > hi:
            raise IntervalDomainError(f"lo must not exceed hi (got [{lo}, {hi}])")
        # normalize ints and numpy scalars to plain floats
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @classmethod
    def crisp(cls, value: float) -> Interval:
        return cls(value, value)

    @classmethod
    def from_center(cls, center: float, spread: float) -> Interval:
        """Interval center ± spread·|center|, e.g. spread=0.05 for ±5%."""
        if not math.isfinite(spread) or spread < 0:
            raise IntervalDomainError("spread must be a non-negative number")
        half = abs(center) * spread
        return cls(center - half, center + half)

    @classmethod
    def hull(cls, values: Iterable[float]) -> Interval:
        """Smallest interval containing every value."""
        data = [float(v) for v in values]
        if not data:
            raise IntervalDomainError("hull of an empty collection is undefined")
        return cls(min(data), max(data))

    @property
    def width(self) -> float:
        return self.hi - self.lo

    @property
    def midpoint(self) -> float:
        return 0.5 * (self.lo + self.hi)

    @property
    def is_crisp(self) -> bool:
        return self.lo == self.hi

    def contains(self, value: float) -> bool:
        return self.lo <= value <= self.hi

    def __add__(self, other: Interval) -> Interval:
        return iv_add(self, other)

    def __sub__(self, other: Interval) -> Interval:
        return iv_sub(self, other)

    def __mul__(self, other: Interval) -> Interval:
        return iv_mul(self, other)

    def __truediv__(self, other: Interval) -> Interval:
        return iv_div(self, other)

    def __str__(self) -> str:
        return f"[{self.lo:.12g}, {self.hi:.12g}]"

    @staticmethod
    def _validate_endpoint(value: float, name: str) -> float:
        if isinstance(value, bool) or not isinstance(value, int | float | np.number):
            raise IntervalDomainError(f"{name} must be a real number")
        result = float(value)
        if not math.isfinite(result):
            raise IntervalDomainError(f"{name} must be finite")
        return result


def iv_add(a: Interval, b: Interval) -> Interval:
    return Interval(a.lo + b.lo, a.hi + b.hi)


def iv_sub(a: Interval, b: Interval) -> Interval:
    return Interval(a.lo - b.hi, a.hi - b.lo)


def iv_mul(a: Interval, b: Interval) -> Interval:
    products = (a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi)
    return Interval(min(products), max(products))


def iv_div(a: Interval, b: Interval) -> Interval:
    """Quotient a / b; b must not contain zero."""
    if b.contains(0.0):
        raise IntervalDomainError(f"division by interval containing zero: {b}")
    quotients = (a.lo / b.lo, a.lo / b.hi, a.hi / b.lo, a.hi / b.hi)
    return Interval(min(quotients), max(quotients))


def param_form(a: Interval, alpha: float) -> float:
    """Crisp value alpha·(hi − lo) + lo for alpha in [0, 1]."""
    alpha = float(alpha)
    if not 0.0 <= alpha <= 1.0:
        raise IntervalDomainError(f"alpha must be in [0, 1] (got {alpha})")
    if alpha == 1.0:
        return a.hi
    # rounding in lo + (hi - lo) may overshoot hi by an ulp
    return min(alpha * (a.hi - a.lo) + a.lo, a.hi)


def param_samples(a: Interval, count: int) -> list[float]:
    """`count` equally spaced parametric values, both endpoints included."""
    if count < 2:
        raise IntervalDomainError("at least two alpha samples are required")
    return [param_form(a, float(alpha)) for alpha in np.linspace(0.0, 1.0, count)]
