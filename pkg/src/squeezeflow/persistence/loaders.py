"""Parse run configuration files and interval shorthand."""

import logging
import re
from pathlib import Path
from typing import Any

from squeezeflow.domain.exceptions import ConfigError, IntervalDomainError
from squeezeflow.domain.intervals import Interval

logger = logging.getLogger(__name__)

# Config file format: one `key = value` per line, `#` comments, blank lines ignored.
#   S = 1.0
#   uncertain = S,M
#   interval = A=0.9:1.1
INTERVAL_KEY = "interval"
LIST_KEYS = {"uncertain", "fields"}

_CENTER_SPREAD = re.compile(
    r"^\s*(?P<center>[-+]?[0-9.eE+-]+?)\s*(?:±|\+-|\+/-)\s*(?P<pct>[0-9.eE+-]+)\s*%\s*$"
)


def _parse_float(value: str, name: str) -> float:
    stripped = value.strip()
    try:
        return float(stripped)
    except ValueError as exc:
        raise ConfigError(f"{name} must be a number (got '{stripped}')") from exc


def _parse_list(value: str) -> list[str]:
    """Comma-separated list; empty items dropped."""
    return [item.strip() for item in value.split(",") if item.strip()]


def normalize_key(key: str) -> str:
    """Flag spelling (`alpha-samples`, `--alpha-samples`) to field spelling."""
    return key.strip().lstrip("-").replace("-", "_")


def parse_interval(text: str) -> Interval:
    """Parse `lo:hi` or `center±p%` (`center+-p%` also accepted)."""
    match = _CENTER_SPREAD.match(text)
    try:
        if match:
            center = _parse_float(match.group("center"), "interval center")
            pct = _parse_float(match.group("pct"), "interval spread")
            return Interval.from_center(center, pct / 100.0)
        parts = text.split(":")
        if len(parts) != 2:
            raise ConfigError(f"interval must be 'lo:hi' or 'center±p%' (got '{text}')")
        return Interval(
            _parse_float(parts[0], "interval lower bound"),
            _parse_float(parts[1], "interval upper bound"),
        )
    except IntervalDomainError as exc:
        raise ConfigError(f"invalid interval '{text}': {exc}") from exc


def parse_interval_assignment(text: str) -> tuple[str, Interval]:
    """Parse `S=0.95:1.05` into ("S", Interval)."""
    name, sep, rest = text.partition("=")
    if not sep or not name.strip():
        raise ConfigError(f"interval override must look like 'S=lo:hi' (got '{text}')")
    return name.strip(), parse_interval(rest)


def load_config_file(path: str | Path) -> dict[str, Any]:
    """
    Load a flat `key = value` configuration file.

    Values stay strings except list keys (split on commas) and `interval`
    entries, which accumulate into a {name: (lo, hi)} mapping. Type checking is
    left to RunConfig.

    Args:
        path: Path to the config file.

    Returns:
        Mapping of normalized keys to raw values.
    """
    path = Path(path)
    if not path.exists():
        raise ConfigError(f"config file not found: {path}")

    raw: dict[str, Any] = {}
    intervals: dict[str, tuple[float, float]] = {}
    with path.open(encoding="utf-8") as f:
        for line_num, line in enumerate(f, start=1):
            content = line.split("#", 1)[0].strip()
            if not content:
                continue
            key, sep, value = content.partition("=")
            if not sep:
                raise ConfigError(f"line {line_num}: expected 'key = value'")
            key = normalize_key(key)
            value = value.strip()
            if not key:
                raise ConfigError(f"line {line_num}: missing key")
            if key in {INTERVAL_KEY, "intervals"}:
                try:
                    name, interval = parse_interval_assignment(value)
                except ConfigError as exc:
                    raise ConfigError(f"line {line_num}: {exc}") from exc
                intervals[name] = (interval.lo, interval.hi)
                continue
            if key in raw:
                logger.warning("line %d: '%s' repeated, last value wins", line_num, key)
            raw[key] = _parse_list(value) if key in LIST_KEYS else value

    if intervals:
        raw["intervals"] = intervals
    logger.info("Loaded %d config keys from %s", len(raw), path)
    return raw
