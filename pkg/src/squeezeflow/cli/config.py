"""Validated run configuration shared by every subcommand."""

from __future__ import annotations

from pathlib import Path

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from squeezeflow.domain.enums import Command, OutputFormat, ProfileField
from squeezeflow.domain.intervals import Interval
from squeezeflow.domain.params import UNCERTAIN_NAMES, FlowParams
from squeezeflow.persistence.writers import format_number
from squeezeflow.services.bvp_oracle import DEFAULT_STEPS, MIN_STEPS
from squeezeflow.services.flow_model import DEFAULT_AUTO_TOL, DEFAULT_ORDER, MAX_ORDER
from squeezeflow.services.uq_sweep import (
    DEFAULT_ALPHA_SAMPLES,
    DEFAULT_ETA_POINTS,
    DEFAULT_SPREAD,
    UncertainSpec,
)

FIELD_NAMES = tuple(f.value for f in ProfileField)
SWEEP_DEFAULT_FIELDS = ("fprime", "theta", "phi")


class RunConfig(BaseModel):  # type: ignore[misc]
    """Effective settings for one run; unknown keys are rejected."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    command: Command
    S: float = 1.0
    A: float = 1.0
    M: float = 1.0
    Pr: float = 1.0
    Nb: float = 0.1
    Nt: float = 0.1
    Le: float = 1.0
    order: int = Field(DEFAULT_ORDER, ge=0, le=MAX_ORDER)
    auto_tol: float = Field(DEFAULT_AUTO_TOL, ge=0.0)
    uncertain: list[str] = Field(default_factory=list)
    spread: float = Field(DEFAULT_SPREAD, ge=0.0)
    intervals: dict[str, tuple[float, float]] = Field(default_factory=dict)
    alpha_samples: int = Field(DEFAULT_ALPHA_SAMPLES, ge=2)
    eta_points: int = Field(DEFAULT_ETA_POINTS, ge=2)
    oracle_steps: int = Field(DEFAULT_STEPS, ge=MIN_STEPS)
    workers: int = Field(1, ge=1)
    out: Path | None = None
    format: OutputFormat = OutputFormat.CSV
    dump_terms: Path | None = None
    fields: list[str] = Field(default_factory=list)

    @field_validator("uncertain")
    @classmethod
    def _validate_uncertain(cls, value: list[str]) -> list[str]:
        unknown = set(value) - set(UNCERTAIN_NAMES)
        if unknown:
            raise ValueError(f"only S, A and M may be uncertain (got {sorted(unknown)})")
        return [name for name in UNCERTAIN_NAMES if name in value]

    @field_validator("intervals")
    @classmethod
    def _validate_intervals(
        cls, value: dict[str, tuple[float, float]]
    ) -> dict[str, tuple[float, float]]:
        unknown = set(value) - set(UNCERTAIN_NAMES)
        if unknown:
            raise ValueError(f"intervals allowed for S, A and M only (got {sorted(unknown)})")
        for name, (lo, hi) in value.items():
            Interval(lo, hi)  # raises on lo > hi or non-finite bounds
        return {name: value[name] for name in UNCERTAIN_NAMES if name in value}

    @field_validator("fields")
    @classmethod
    def _validate_fields(cls, value: list[str]) -> list[str]:
        unknown = set(value) - set(FIELD_NAMES)
        if unknown:
            raise ValueError(f"fields must be among {FIELD_NAMES} (got {sorted(unknown)})")
        return [name for name in FIELD_NAMES if name in value]

    @model_validator(mode="after")
    def _validate_params(self) -> RunConfig:
        self.flow_params()
        return self

    def flow_params(self) -> FlowParams:
        return FlowParams(
            S=self.S, A=self.A, M=self.M, Pr=self.Pr, Nb=self.Nb, Nt=self.Nt, Le=self.Le
        )

    @property
    def uncertain_names(self) -> tuple[str, ...]:
        """Parameters named by --uncertain or given an explicit --interval."""
        names = set(self.uncertain) | set(self.intervals)
        return tuple(name for name in UNCERTAIN_NAMES if name in names)

    def uncertain_spec(self) -> UncertainSpec:
        base = self.flow_params()
        intervals = {
            name: (
                Interval(*self.intervals[name])
                if name in self.intervals
                else Interval.from_center(getattr(base, name), self.spread)
            )
            for name in self.uncertain_names
        }
        return UncertainSpec(
            base=base,
            intervals=intervals,
            alpha_samples=self.alpha_samples,
            eta_points=self.eta_points,
        )

    def selected_fields(self, default: tuple[str, ...] = FIELD_NAMES) -> tuple[str, ...]:
        return tuple(self.fields) if self.fields else default

    def echo(self) -> list[str]:
        """`key = value` lines for every setting, defaults included.

        The lines use the config-file syntax, so an output header can be
        turned back into a config file by stripping the leading `# `.
        """
        lines = []
        for key, value in self.model_dump().items():
            if value is None:
                continue
            if key == "intervals":
                lines.extend(
                    f"interval = {name}={format_number(lo)}:{format_number(hi)}"
                    for name, (lo, hi) in value.items()
                )
                continue
            lines.append(f"{key} = {_echo_value(value)}")
        return lines


def _echo_value(value: object) -> str:
    if isinstance(value, Command | OutputFormat):
        return value.value
    if isinstance(value, float):
        return format_number(value)
    if isinstance(value, list | tuple):
        return ",".join(_echo_value(v) for v in value)
    return str(value)
