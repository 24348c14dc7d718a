"""Timed knowledge-manipulation workloads and their statistics."""

from .report import emit_report, results_from_json
from .runner import StatsRow, BenchmarkResults, TASK_NAMES, run_benchmark, summarize
from .scenario import ScenarioManifest, default_manifest, load_manifest

__all__ = [
    "BenchmarkResults",
    "ScenarioManifest",
    "StatsRow",
    "TASK_NAMES",
    "default_manifest",
    "emit_report",
    "load_manifest",
    "results_from_json",
    "run_benchmark",
    "summarize",
]
