"""
Integration tests for `squeezeflow report`."""

from __future__ import annotations

import json
from pathlib import Path

import pytest

from squeezeflow.cli.app import main


def test_report_writes_json_and_table(tmp_path: Path) -> None:
    out = tmp_path / "report.json"
    code = main(["report", "--spread", "0.05", "--eta-points", "41", "--out", str(out)])
    assert code == 0

    payload = json.loads(out.read_text(encoding="utf-8"))
    assert set(payload["pairings"]) == {"S,M", "S,A", "A,M"}
    for widths in payload["pairings"].values():
        assert set(widths["integral_width"]) == {"fprime", "theta", "phi"}
        assert set(widths["max_width"]) == {"fprime", "theta", "phi"}
    assert set(payload["rankings"]) == {"fprime", "theta", "phi"}
    assert set(payload["agreement"]) == {"fprime", "theta", "phi"}
    assert payload["published_widest"]["fprime"] == "A,M"
    assert "command = report" in payload["config"]

    table = (tmp_path / "report.table.txt").read_text(encoding="utf-8")
    assert "pairing" in table
    assert "published ordering" in table
    for pairing in ("S,M", "S,A", "A,M"):
        assert pairing in table


def test_report_to_stdout_puts_table_on_stderr(capsys: pytest.CaptureFixture[str]) -> None:
    assert main(["report", "--alpha-samples", "2", "--eta-points", "11", "--order", "2"]) == 0
    captured = capsys.readouterr()
    payload = json.loads(captured.out)
    assert payload["alpha_samples"] == 2
    assert "ranking:" in captured.err


def test_report_zero_spread_is_degenerate(tmp_path: Path) -> None:
    out = tmp_path / "report.json"
    assert main(["report", "--spread", "0", "--alpha-samples", "2", "--eta-points", "11",
                 "--out", str(out)]) == 0
    payload = json.loads(out.read_text(encoding="utf-8"))
    assert all(payload["degenerate"].values())
    assert all(v is None for v in payload["agreement"].values())
    assert "degenerate" in (tmp_path / "report.table.txt").read_text(encoding="utf-8")


def test_report_echoes_base_values(capsys: pytest.CaptureFixture[str]) -> None:
    argv = ["report", "--base-S", "1", "--base-A", "1", "--base-M", "1",
            "--alpha-samples", "2", "--eta-points", "11", "--order", "2"]
    assert main(argv) == 0
    captured = capsys.readouterr()
    config = json.loads(captured.out)["config"]
    for line in ("S = 1.0", "A = 1.0", "M = 1.0"):
        assert line in config
    assert "base: S=1.0, A=1.0, M=1.0" in captured.err
