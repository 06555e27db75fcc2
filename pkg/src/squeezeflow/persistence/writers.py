"""CSV/JSON rendering and atomic output files.

Numbers are rounded to 12 significant digits before rendering so that a
config always reproduces byte-identical files.
"""

from __future__ import annotations

import json
import logging
import math
import sys
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass
from pathlib import Path
from tempfile import NamedTemporaryFile
from typing import Any

import numpy as np

logger = logging.getLogger(__name__)

SIGNIFICANT_DIGITS = 12


def round_number(value: float) -> float:
    """Round to 12 significant digits; -0.0 becomes 0.0."""
    result = float(f"{float(value):.{SIGNIFICANT_DIGITS}g}")
    return result + 0.0


def format_number(value: float) -> str:
    """Decimal text with 12 significant digits, e.g. 1.0, 0.5, 1e-13."""
    value = float(value)
    if not math.isfinite(value):
        return repr(value)
    return repr(round_number(value))


def to_jsonable(value: Any) -> Any:
    """Recursively convert numpy values and round floats for JSON output."""
    if isinstance(value, Mapping):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, np.ndarray):
        return [to_jsonable(v) for v in value.tolist()]
    if isinstance(value, list | tuple):
        return [to_jsonable(v) for v in value]
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, int | np.integer):
        return int(value)
    if isinstance(value, float | np.floating):
        return round_number(float(value)) if math.isfinite(value) else None
    if isinstance(value, Path):
        return str(value)
    return str(value)


def render_json(payload: Mapping[str, Any]) -> str:
    return json.dumps(to_jsonable(payload), indent=2, sort_keys=True) + "\n"


def render_csv(
    header: Iterable[str],
    columns: Sequence[str],
    rows: Iterable[Sequence[float]],
) -> str:
    """Comment lines prefixed `#`, a column-name row, then data rows."""
    lines = [f"# {line}" if line else "#" for line in header]
    lines.append(",".join(columns))
    for row in rows:
        if len(row) != len(columns):
            raise ValueError("row length must match the column count")
        lines.append(",".join(format_number(v) for v in row))
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class OutputTarget:
    """A file path, or stdout when path is None."""

    path: Path | None = None

    def write(self, text: str) -> None:
        if self.path is None:
            sys.stdout.write(text)
            sys.stdout.flush()
            return
        write_text_atomic(self.path, text)
        logger.info("Wrote %s", self.path)


def write_text_atomic(path: Path, text: str) -> None:
    """Persist text atomically (temp file + rename)."""
    path.parent.mkdir(parents=True, exist_ok=True)

    with NamedTemporaryFile(
        mode="w",
        delete=False,
        dir=path.parent,
        encoding="utf-8",
        newline="\n",
    ) as tmp:
        tmp.write(text)
        tmp_path = Path(tmp.name)

    tmp_path.replace(path)
