"""Interval uncertainty propagation by parametric sampling.

Each uncertain parameter is swept through its parametric form with equally
spaced alpha values (endpoints included); the series is evaluated for every
combination and the profiles are reduced to pointwise min/max bands.
"""

from __future__ import annotations

import itertools
import logging
from collections.abc import Mapping, Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from squeezeflow.domain.enums import PUBLISHED_WIDEST, Pairing, ProfileField
from squeezeflow.domain.exceptions import ParameterDomainError, SqueezeFlowError, SweepError
from squeezeflow.domain.intervals import Interval, param_samples
from squeezeflow.domain.params import UNCERTAIN_NAMES, FlowParams
from squeezeflow.domain.polynomials import FloatArray
from squeezeflow.services.flow_model import (
    DEFAULT_AUTO_TOL,
    DEFAULT_ORDER,
    ProfileTable,
    evaluate,
    expand,
    make_eta_grid,
    nusselt,
)

logger = logging.getLogger(__name__)

DEFAULT_ALPHA_SAMPLES = 5
DEFAULT_ETA_POINTS = 101
DEFAULT_SPREAD = 0.05
BAND_FIELDS = (
    ProfileField.F,
    ProfileField.FPRIME,
    ProfileField.THETA,
    ProfileField.PHI,
)
REPORT_FIELDS = (ProfileField.FPRIME, ProfileField.THETA, ProfileField.PHI)


@dataclass(frozen=True)
class UncertainSpec:
    """Crisp base parameters plus intervals for any of S, A, M."""

    base: FlowParams = field(default_factory=FlowParams)
    intervals: Mapping[str, Interval] = field(default_factory=dict)
    alpha_samples: int = DEFAULT_ALPHA_SAMPLES
    eta_points: int = DEFAULT_ETA_POINTS

    def __post_init__(self) -> None:
        unknown = set(self.intervals) - set(UNCERTAIN_NAMES)
        if unknown:
            raise ParameterDomainError(
                f"only S, A and M may be uncertain (got {sorted(unknown)})"
            )
        if self.alpha_samples < 2:
            raise ParameterDomainError("alpha_samples must be at least 2")
        if self.eta_points < 2:
            raise ParameterDomainError("eta_points must be at least 2")
        # canonical S, A, M order keeps draw enumeration deterministic
        ordered = {name: self.intervals[name] for name in UNCERTAIN_NAMES if name in self.intervals}
        object.__setattr__(self, "intervals", ordered)

    @classmethod
    def from_spread(
        cls,
        base: FlowParams,
        names: Sequence[str],
        spread: float = DEFAULT_SPREAD,
        **kwargs: int,
    ) -> UncertainSpec:
        """Intervals base ± spread·|base| for each named parameter."""
        intervals = {name: Interval.from_center(getattr(base, name), spread) for name in names}
        return cls(base=base, intervals=intervals, **kwargs)

    @property
    def uncertain(self) -> tuple[str, ...]:
        return tuple(self.intervals)

    @property
    def eta_grid(self) -> FloatArray:
        return make_eta_grid(self.eta_points)


@dataclass(frozen=True, eq=False)
class EnvelopeBand:
    """Pointwise lower/upper profile bounds over all sampled draws."""

    eta_grid: FloatArray
    lower: dict[str, FloatArray]
    upper: dict[str, FloatArray]
    nusselt: Interval
    draws: int

    def bounds(self, name: ProfileField | str) -> tuple[FloatArray, FloatArray]:
        key = ProfileField(name).value
        return self.lower[key], self.upper[key]

    def width(self, name: ProfileField | str) -> FloatArray:
        lo, hi = self.bounds(name)
        return hi - lo


@dataclass(frozen=True)
class PairingWidths:
    pairing: Pairing
    max_width: dict[str, float]
    integral_width: dict[str, float]
    nusselt: Interval


@dataclass(frozen=True)
class SensitivityReport:
    """Widths for the three pairings, rankings and agreement with the published study."""

    base: FlowParams
    spread: float
    alpha_samples: int
    eta_points: int
    order: int
    pairings: tuple[PairingWidths, ...]
    rankings: dict[str, tuple[Pairing, ...]]
    degenerate: dict[str, bool]
    agreement: dict[str, bool | None]

    def as_dict(self) -> dict[str, object]:
        return {
            "base": self.base.as_dict(),
            "spread": self.spread,
            "alpha_samples": self.alpha_samples,
            "eta_points": self.eta_points,
            "order": self.order,
            "pairings": {
                pw.pairing.value: {
                    "max_width": pw.max_width,
                    "integral_width": pw.integral_width,
                    "nusselt": [pw.nusselt.lo, pw.nusselt.hi],
                    "nusselt_width": pw.nusselt.width,
                }
                for pw in self.pairings
            },
            "rankings": {k: [p.value for p in v] for k, v in self.rankings.items()},
            "degenerate": self.degenerate,
            "published_widest": {f.value: p.value for f, p in PUBLISHED_WIDEST.items()},
            "agreement": self.agreement,
        }


def sample_box(spec: UncertainSpec) -> list[FlowParams]:
    """Cartesian grid of parametric samples; crisp parameters copied from the base."""
    names = spec.uncertain
    axes = [param_samples(spec.intervals[name], spec.alpha_samples) for name in names]
    return [
        spec.base.replace(**dict(zip(names, values, strict=True)))
        for values in itertools.product(*axes)
    ]


def _solve_draw(
    params: FlowParams, order: int, auto_tol: float, eta_grid: FloatArray
) -> tuple[ProfileTable, float]:
    sol = expand(params, order, auto_tol)
    return evaluate(sol, eta_grid), nusselt(sol)


def _solve_all(
    draws: Sequence[FlowParams],
    order: int,
    auto_tol: float,
    eta_grid: FloatArray,
    workers: int,
) -> list[tuple[ProfileTable, float]]:
    if workers <= 1:
        results = []
        for index, params in enumerate(draws):
            try:
                results.append(_solve_draw(params, order, auto_tol, eta_grid))
            except SqueezeFlowError as exc:
                raise SweepError(index, params, str(exc)) from exc
        return results

    with ProcessPoolExecutor(max_workers=workers) as pool:
        futures = [
            pool.submit(_solve_draw, params, order, auto_tol, eta_grid) for params in draws
        ]
        results = []
        for index, (params, future) in enumerate(zip(draws, futures, strict=True)):
            try:
                results.append(future.result())
            except SqueezeFlowError as exc:
                raise SweepError(index, params, str(exc)) from exc
        return results


def reduce_band(
    eta_grid: FloatArray, profiles: Sequence[tuple[ProfileTable, float]]
) -> EnvelopeBand:
    if not profiles:
        raise ParameterDomainError("cannot build a band from zero draws")
    lower: dict[str, FloatArray] = {}
    upper: dict[str, FloatArray] = {}
    for name in BAND_FIELDS:
        stack = np.vstack([table.column(name) for table, _ in profiles])
        lower[name.value] = stack.min(axis=0)
        upper[name.value] = stack.max(axis=0)
    return EnvelopeBand(
        eta_grid=eta_grid,
        lower=lower,
        upper=upper,
        nusselt=Interval.hull(nu for _, nu in profiles),
        draws=len(profiles),
    )


def envelope(
    spec: UncertainSpec,
    order: int = DEFAULT_ORDER,
    auto_tol: float = DEFAULT_AUTO_TOL,
    workers: int = 1,
) -> EnvelopeBand:
    """Series solution for every draw of the box, reduced to min/max bands."""
    spec.base.require_concentration()
    draws = sample_box(spec)
    grid = spec.eta_grid
    band = reduce_band(grid, _solve_all(draws, order, auto_tol, grid, workers))
    logger.info(
        "envelope over %s: %d draws, Nu in %s",
        ",".join(spec.uncertain) or "crisp",
        band.draws,
        band.nusselt,
    )
    return band


def bound_profiles(
    spec: UncertainSpec,
    order: int = DEFAULT_ORDER,
    auto_tol: float = DEFAULT_AUTO_TOL,
) -> tuple[ProfileTable, ProfileTable]:
    """Profiles at the all-lower (alpha=0) and all-upper (alpha=1) draws."""
    low = spec.base.replace(**{n: iv.lo for n, iv in spec.intervals.items()})
    high = spec.base.replace(**{n: iv.hi for n, iv in spec.intervals.items()})
    grid = spec.eta_grid
    return (
        evaluate(expand(low, order, auto_tol), grid),
        evaluate(expand(high, order, auto_tol), grid),
    )


def band_width(band: EnvelopeBand, name: ProfileField | str) -> tuple[float, float]:
    """(max width, trapezoidal integral of the width over [0, 1])."""
    width = band.width(name)
    grid = band.eta_grid
    integral = float(np.sum(0.5 * (width[1:] + width[:-1]) * np.diff(grid)))
    return float(np.max(width)), integral


def sensitivity_report(
    base: FlowParams,
    spread: float = DEFAULT_SPREAD,
    alpha_samples: int = DEFAULT_ALPHA_SAMPLES,
    eta_points: int = DEFAULT_ETA_POINTS,
    order: int = DEFAULT_ORDER,
    auto_tol: float = DEFAULT_AUTO_TOL,
    workers: int = 1,
) -> SensitivityReport:
    """Run the (S,M), (S,A) and (A,M) sweeps and rank them per field."""
    if spread < 0:
        raise ParameterDomainError("spread must be non-negative")

    pairings: list[PairingWidths] = []
    for pairing in Pairing:
        spec = UncertainSpec.from_spread(
            base,
            pairing.parameters,
            spread,
            alpha_samples=alpha_samples,
            eta_points=eta_points,
        )
        band = envelope(spec, order, auto_tol, workers)
        max_width: dict[str, float] = {}
        integral_width: dict[str, float] = {}
        for name in REPORT_FIELDS:
            max_width[name.value], integral_width[name.value] = band_width(band, name)
        pairings.append(PairingWidths(pairing, max_width, integral_width, band.nusselt))

    rankings: dict[str, tuple[Pairing, ...]] = {}
    degenerate: dict[str, bool] = {}
    agreement: dict[str, bool | None] = {}
    for name in REPORT_FIELDS:
        key = name.value
        # stable sort keeps enum order on ties
        ranked = sorted(pairings, key=lambda pw: -pw.integral_width[key])
        rankings[key] = tuple(pw.pairing for pw in ranked)
        degenerate[key] = all(pw.integral_width[key] == 0.0 for pw in pairings)
        if degenerate[key]:
            agreement[key] = None
            continue
        agreement[key] = rankings[key][0] is PUBLISHED_WIDEST[name]
        if not agreement[key]:
            logger.warning(
                "%s: widest band from %s, published study reports %s",
                key,
                rankings[key][0].value,
                PUBLISHED_WIDEST[name].value,
            )

    return SensitivityReport(
        base=base,
        spread=spread,
        alpha_samples=alpha_samples,
        eta_points=eta_points,
        order=order,
        pairings=tuple(pairings),
        rankings=rankings,
        degenerate=degenerate,
        agreement=agreement,
    )
