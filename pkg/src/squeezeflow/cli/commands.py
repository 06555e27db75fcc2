"""Subcommand implementations: solve, sweep, validate and report."""

from __future__ import annotations

import logging
import sys
from pathlib import Path

from squeezeflow.cli.config import SWEEP_DEFAULT_FIELDS, RunConfig
from squeezeflow.domain.enums import Command, OutputFormat, ProfileField
from squeezeflow.domain.exceptions import ConfigError
from squeezeflow.persistence.writers import (
    OutputTarget,
    format_number,
    render_csv,
    render_json,
    write_text_atomic,
)
from squeezeflow.services.bvp_oracle import compare, convergence_study
from squeezeflow.services.flow_model import (
    HpmSolution,
    evaluate,
    expand,
    expand_to_tolerance,
    make_eta_grid,
    nusselt,
)
from squeezeflow.services.uq_sweep import (
    REPORT_FIELDS,
    SensitivityReport,
    UncertainSpec,
    band_width,
    bound_profiles,
    envelope,
    sensitivity_report,
)

logger = logging.getLogger(__name__)


def _terms_payload(sol: HpmSolution) -> dict[str, object]:
    return {
        "order": sol.order,
        "params": sol.params.as_dict(),
        "f": [term.to_list() for term in sol.f_terms],
        "theta": [term.to_list() for term in sol.theta_terms],
        "phi": [term.to_list() for term in sol.phi_terms],
    }


def _written(config: RunConfig, *extra: Path) -> list[Path]:
    paths = [config.out] if config.out is not None else []
    return paths + list(extra)


def run_solve(config: RunConfig) -> list[Path]:
    """Crisp series solve tabulated on the eta grid."""
    params = config.flow_params()
    sol = expand(params, config.order, config.auto_tol)
    table = evaluate(sol, make_eta_grid(config.eta_points))
    nu = nusselt(sol)
    fields = config.selected_fields()
    logger.info("solved to order %d (Nu=%s)", sol.order, format_number(nu))

    if config.format is OutputFormat.JSON:
        text = render_json(
            {
                "config": config.echo(),
                "nusselt": nu,
                "order_used": sol.order,
                "eta": table.eta_grid,
                "columns": {name: table.column(name) for name in fields},
            }
        )
    else:
        header = [*config.echo(), f"Nu={format_number(nu)}", f"order_used={sol.order}"]
        columns = ["eta", *fields]
        rows = zip(table.eta_grid, *(table.column(name) for name in fields), strict=True)
        text = render_csv(header, columns, rows)
    OutputTarget(config.out).write(text)

    extra: list[Path] = []
    if config.dump_terms is not None:
        write_text_atomic(config.dump_terms, render_json(_terms_payload(sol)))
        logger.info("Wrote series terms to %s", config.dump_terms)
        extra.append(config.dump_terms)
    return _written(config, *extra)


def _bounds_payload(
    spec: UncertainSpec, config: RunConfig, fields: tuple[str, ...]
) -> dict[str, object]:
    """Profiles at the all-lower and all-upper interval endpoints."""
    low, high = bound_profiles(spec, config.order, config.auto_tol)
    return {
        "alpha0": {name: low.column(name) for name in fields},
        "alpha1": {name: high.column(name) for name in fields},
    }


def run_sweep(config: RunConfig) -> list[Path]:
    """Envelope bands over the uncertain parameter box."""
    if not config.uncertain_names:
        raise ConfigError("sweep needs at least one uncertain parameter (--uncertain or --interval)")
    spec = config.uncertain_spec()
    band = envelope(spec, config.order, config.auto_tol, config.workers)
    fields = config.selected_fields(SWEEP_DEFAULT_FIELDS)

    widths = {name: band_width(band, name) for name in fields}
    if config.format is OutputFormat.JSON:
        text = render_json(
            {
                "config": config.echo(),
                "intervals": {n: [iv.lo, iv.hi] for n, iv in spec.intervals.items()},
                "draws": band.draws,
                "nusselt": [band.nusselt.lo, band.nusselt.hi],
                "eta": band.eta_grid,
                "bands": {
                    name: {"lo": band.lower[name], "hi": band.upper[name]}
                    for name in fields
                },
                "widths": {
                    name: {"max": mw, "integral": iw} for name, (mw, iw) in widths.items()
                },
                "bounds": _bounds_payload(spec, config, fields),
            }
        )
    else:
        header = [
            *config.echo(),
            f"draws={band.draws}",
            f"Nu=[{format_number(band.nusselt.lo)},{format_number(band.nusselt.hi)}]",
            *(
                f"width {name} max={format_number(mw)} integral={format_number(iw)}"
                for name, (mw, iw) in widths.items()
            ),
        ]
        columns = ["eta"]
        series = [band.eta_grid]
        for name in fields:
            columns += [f"{name}_lo", f"{name}_hi"]
            series += [band.lower[name], band.upper[name]]
        text = render_csv(header, columns, zip(*series, strict=True))
    OutputTarget(config.out).write(text)
    return _written(config)


def run_validate(config: RunConfig) -> list[Path]:
    """Series-vs-shooting error report for orders 1..N and the auto-stop order."""
    params = config.flow_params()
    oracle, reports = convergence_study(
        params, config.order, config.oracle_steps, config.auto_tol
    )
    payload: dict[str, object] = {
        "config": config.echo(),
        "oracle": {
            "steps": config.oracle_steps,
            "iterations": oracle.iterations,
            "shoot_unknowns": {
                "f2_0": oracle.shoot_unknowns[0],
                "f3_0": oracle.shoot_unknowns[1],
                "theta1_0": oracle.shoot_unknowns[2],
                "phi1_0": oracle.shoot_unknowns[3],
            },
            "terminal_residuals": list(oracle.terminal_residuals),
            "nusselt": oracle.nusselt,
        },
        "orders": [report.as_dict() for report in reports],
    }
    if config.auto_tol > 0:
        auto = expand_to_tolerance(params, config.auto_tol)
        payload["auto_stop"] = {
            **compare(auto, oracle).as_dict(),
            "last_term_size": auto.last_term_size,
        }
    for report in reports:
        logger.info(
            "order %d: max|df|=%.3e max|dtheta|=%.3e max|dphi|=%.3e",
            report.order,
            report.max_abs(ProfileField.F),
            report.max_abs(ProfileField.THETA),
            report.max_abs(ProfileField.PHI),
        )
    OutputTarget(config.out).write(render_json(payload))
    return _written(config)


def render_report_table(report: SensitivityReport) -> str:
    """Plain-text table: pairings x fields with widths, rankings and agreement."""
    name_width = 8
    lines = [
        f"spread={format_number(report.spread)} "
        f"alpha_samples={report.alpha_samples} order={report.order}",
        "base: " + ", ".join(f"{k}={format_number(v)}" for k, v in report.base.as_dict().items()),
        "",
        f"{'pairing':<{name_width}}"
        + "".join(f"{name.value + ' int':>16}{name.value + ' max':>16}" for name in REPORT_FIELDS)
        + f"{'Nu width':>16}",
    ]
    for pw in report.pairings:
        row = f"{pw.pairing.value:<{name_width}}"
        for name in REPORT_FIELDS:
            row += f"{pw.integral_width[name.value]:>16.6e}{pw.max_width[name.value]:>16.6e}"
        row += f"{pw.nusselt.width:>16.6e}"
        lines.append(row)
    lines.append("")
    for name in REPORT_FIELDS:
        key = name.value
        ranking = " > ".join(p.value for p in report.rankings[key])
        if report.degenerate[key]:
            verdict = "degenerate (all widths zero)"
        else:
            verdict = "agrees" if report.agreement[key] else "disagrees"
        lines.append(f"{key:<8} ranking: {ranking}  [{verdict} with published ordering]")
    return "\n".join(lines) + "\n"


def run_report(config: RunConfig) -> list[Path]:
    """Sensitivity comparison of the (S,M), (S,A) and (A,M) pairings."""
    report = sensitivity_report(
        config.flow_params(),
        spread=config.spread,
        alpha_samples=config.alpha_samples,
        eta_points=config.eta_points,
        order=config.order,
        auto_tol=config.auto_tol,
        workers=config.workers,
    )
    payload = {"config": config.echo(), **report.as_dict()}
    table = render_report_table(report)
    OutputTarget(config.out).write(render_json(payload))

    if config.out is None:
        sys.stderr.write(table)
        return []
    table_path = config.out.with_name(f"{config.out.stem}.table.txt")
    write_text_atomic(table_path, table)
    return _written(config, table_path)


COMMANDS = {
    Command.SOLVE: run_solve,
    Command.SWEEP: run_sweep,
    Command.VALIDATE: run_validate,
    Command.REPORT: run_report,
}
