"""Command-line entrypoint.

Example:
  squeezeflow solve --A 1 --S 0.5 --M 0.5 --order 3 --out profile.csv
  squeezeflow sweep --uncertain S,M --spread 0.05 --out band.csv
  squeezeflow validate --S 0.5 --M 0.5
  squeezeflow report --spread 0.05 --out report.json
"""

from __future__ import annotations

import argparse
import logging
from collections.abc import Sequence
from pathlib import Path
from typing import Any

from pydantic import ValidationError

from squeezeflow.cli.commands import COMMANDS
from squeezeflow.cli.config import RunConfig
from squeezeflow.domain.enums import Command
from squeezeflow.domain.exceptions import (
    ConfigError,
    IntervalDomainError,
    ParameterDomainError,
    SqueezeFlowError,
)
from squeezeflow.logging import setup_logging
from squeezeflow.persistence.loaders import (
    _parse_list,
    load_config_file,
    parse_interval_assignment,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_SOLVER = 1
EXIT_USAGE = 2

# argparse keys that are not RunConfig fields
_CLI_ONLY = {"command", "config", "log_level", "interval"}
# bad input rather than a failed computation
_USAGE_ERRORS = (ConfigError, IntervalDomainError, ParameterDomainError)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False, allow_abbrev=False)
    # SUPPRESS keeps unset flags out of the namespace so config-file values survive
    opt = {"default": argparse.SUPPRESS}

    common.add_argument("--config", type=Path, help="flat 'key = value' config file")
    common.add_argument(
        "--log-level",
        choices=["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"],
        default=None,
    )

    physics = common.add_argument_group("flow parameters")
    physics.add_argument("--S", "--base-S", dest="S", type=float, help="squeeze number", **opt)
    physics.add_argument("--A", "--base-A", dest="A", type=float, help="suction parameter", **opt)
    physics.add_argument("--M", "--base-M", dest="M", type=float, help="Hartmann number", **opt)
    physics.add_argument("--Pr", type=float, help="Prandtl number", **opt)
    physics.add_argument("--Nb", type=float, help="Brownian motion parameter", **opt)
    physics.add_argument("--Nt", type=float, help="thermophoresis parameter", **opt)
    physics.add_argument("--Le", type=float, help="Lewis number", **opt)

    series = common.add_argument_group("series and oracle")
    series.add_argument("--order", type=int, help="highest series order (0-10)", **opt)
    series.add_argument("--auto-tol", type=float, help="early-stop term size; 0 disables", **opt)
    series.add_argument("--oracle-steps", type=int, help="RK4 steps for shooting", **opt)

    sweep = common.add_argument_group("uncertainty")
    sweep.add_argument("--uncertain", type=_parse_list, help="comma list from S,A,M", **opt)
    sweep.add_argument("--spread", type=float, help="relative half-width, e.g. 0.05", **opt)
    sweep.add_argument(
        "--interval",
        action="append",
        default=[],
        help="explicit interval, e.g. S=0.95:1.05 or S=1±5%%",
    )
    sweep.add_argument("--alpha-samples", type=int, help="samples per interval", **opt)
    sweep.add_argument("--eta-points", type=int, help="eta grid size", **opt)
    sweep.add_argument("--workers", type=int, help="processes for the sweep", **opt)

    output = common.add_argument_group("output")
    output.add_argument("--out", type=Path, help="output file (stdout if omitted)", **opt)
    output.add_argument("--format", choices=["csv", "json"], **opt)
    output.add_argument("--dump-terms", type=Path, help="write series coefficients as JSON", **opt)
    output.add_argument("--fields", type=_parse_list, help="comma list of f,fprime,theta,phi", **opt)

    parser = argparse.ArgumentParser(
        prog="squeezeflow",
        description="Interval HPM solver for MHD squeezing nanofluid flow",
        allow_abbrev=False,
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for command in Command:
        sub.add_parser(command.value, parents=[common], allow_abbrev=False)
    return parser


def resolve_config(args: argparse.Namespace) -> RunConfig:
    """Defaults, then the config file, then explicit flags."""
    values: dict[str, Any] = {}
    if args.config is not None:
        values.update(load_config_file(args.config))

    flags = {k: v for k, v in vars(args).items() if k not in _CLI_ONLY}
    intervals = dict(values.pop("intervals", {}))
    for text in args.interval:
        name, interval = parse_interval_assignment(text)
        intervals[name] = (interval.lo, interval.hi)

    values.update(flags)
    values["command"] = args.command
    if intervals:
        values["intervals"] = intervals
    return RunConfig(**values)


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    setup_logging(args.log_level)

    try:
        config = resolve_config(args)
    except ValidationError as exc:
        for error in exc.errors():
            location = ".".join(str(part) for part in error["loc"]) or "config"
            logger.error("invalid %s: %s", location, error["msg"])
        return EXIT_USAGE
    except _USAGE_ERRORS as exc:
        logger.error("%s", exc)
        return EXIT_USAGE

    try:
        written = COMMANDS[config.command](config)
    except _USAGE_ERRORS as exc:
        logger.error("%s", exc)
        return EXIT_USAGE
    except SqueezeFlowError as exc:
        logger.error("%s failed: %s", config.command.value, exc)
        return EXIT_SOLVER

    for path in written:
        logger.debug("output: %s", path)
    return EXIT_OK


if __name__ == "__main__":
    raise SystemExit(main())
