"""Render benchmark results as a table, CSV, or JSON."""

from __future__ import annotations

import json

from .runner import TASK_NAMES, TOTAL_NAME, BenchmarkResults

_STAT_ROWS = (
    ("Mean", "mean"),
    ("Std Dev.", "std_dev"),
    ("Min", "min"),
    ("Max", "max"),
    ("Sum", "sum"),
)

_COLUMNS = (*TASK_NAMES, TOTAL_NAME)


def emit_report(results: BenchmarkResults, format: str = "table") -> str:
    """Deterministic rendering; table cells use 3-decimal seconds."""
    if format == "table":
        return _table(results)
    if format == "csv":
        return _csv(results)
    if format == "json":
        return json.dumps(results.to_json_obj(), sort_keys=True) + "\n"
    raise ValueError(f"unknown report format {format!r}")


def results_from_json(text: str) -> BenchmarkResults:
    return BenchmarkResults.from_json_obj(json.loads(text))


def _cell(results: BenchmarkResults, column: str, attr: str) -> str:
    row = results.rows.get(column)
    return f"{getattr(row, attr):.3f}" if row is not None else "-"


def _table(results: BenchmarkResults) -> str:
    grid = [["", *_COLUMNS]]
    for label, attr in _STAT_ROWS:
        grid.append([label, *(_cell(results, c, attr) for c in _COLUMNS)])
    widths = [max(len(row[i]) for row in grid) for i in range(len(grid[0]))]
    lines = []
    for row in grid:
        cells = [row[0].ljust(widths[0])]
        cells.extend(value.rjust(widths[i + 1]) for i, value in enumerate(row[1:]))
        lines.append("  ".join(cells).rstrip())
    return "\n".join(lines) + "\n"


def _csv(results: BenchmarkResults) -> str:
    lines = ["stat," + ",".join(_COLUMNS)]
    for label, attr in _STAT_ROWS:
        values = []
        for column in _COLUMNS:
            row = results.rows.get(column)
            values.append(repr(getattr(row, attr)) if row is not None else "")
        lines.append(f"{label}," + ",".join(values))
    return "\n".join(lines) + "\n"
