"""Timed execution of the five-task workload and its statistics.

Each iteration runs, in order and against one DAO family:

* TtR — reset the knowledge base
* TtL — load the scenario's initial knowledge
* TtC — the check-tables script
* TtS — the serve-order script
* TtG — the guide-person script

One monotonic clock is read at the six task boundaries, so the five task
durations tile the iteration with no gaps and the iteration total is
their sum. Warm-up iterations (default 10) run the same cycle but are
not recorded.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

from ..dao import BackendConfig, create_dao_family
from ..errors import EmptySamples, KantKbError
from ..pddl import load_into_kb
from .scenario import ScenarioManifest

TASK_NAMES = ("TtR", "TtL", "TtC", "TtS", "TtG")
TOTAL_NAME = "Total"


@dataclass(frozen=True)
class StatsRow:
    """Descriptive statistics of one task's samples, in seconds."""

    mean: float
    std_dev: float
    min: float
    max: float
    sum: float


def summarize(samples: list[float]) -> StatsRow:
    """Mean, sample standard deviation (n-1), min, max and sum.

    A single sample has standard deviation 0. Raises
    :class:`EmptySamples` on an empty list.
    """
    if not samples:
        raise EmptySamples("cannot summarize zero samples")
    n = len(samples)
    total = math.fsum(samples)
    mean = total / n
    if n > 1:
        std_dev = math.sqrt(math.fsum((x - mean) ** 2 for x in samples) / (n - 1))
    else:
        std_dev = 0.0
    return StatsRow(mean=mean, std_dev=std_dev, min=min(samples), max=max(samples), sum=total)


@dataclass
class BenchmarkResults:
    """Per-task samples and statistics for one backend run."""

    backend: str
    iterations: int
    warmup: int
    samples: dict[str, list[float]] = field(default_factory=dict)
    rows: dict[str, StatsRow] = field(default_factory=dict)

    def to_json_obj(self) -> dict:
        return {
            "backend": self.backend,
            "iterations": self.iterations,
            "warmup": self.warmup,
            "samples": {task: list(values) for task, values in self.samples.items()},
            "stats": {
                task: {
                    "mean": row.mean,
                    "std_dev": row.std_dev,
                    "min": row.min,
                    "max": row.max,
                    "sum": row.sum,
                }
                for task, row in self.rows.items()
            },
        }

    @classmethod
    def from_json_obj(cls, payload: dict) -> "BenchmarkResults":
        return cls(
            backend=payload["backend"],
            iterations=payload["iterations"],
            warmup=payload["warmup"],
            samples={task: list(v) for task, v in payload["samples"].items()},
            rows={task: StatsRow(**row) for task, row in payload["stats"].items()},
        )


def run_benchmark(
    config: BackendConfig,
    manifest: ScenarioManifest,
    iterations: int,
    warmup: int = 10,
) -> BenchmarkResults:
    """Run the workload ``iterations`` times and summarize per task.

    Backend errors propagate; the statistics for the iterations that did
    complete are attached to the raised exception as
    ``exc.partial_results``.
    """
    if iterations < 1:
        raise ValueError("iterations must be >= 1")
    if warmup < 0:
        raise ValueError("warmup must be >= 0")

    samples: dict[str, list[float]] = {task: [] for task in TASK_NAMES}
    samples[TOTAL_NAME] = []
    family = create_dao_family(config)
    try:
        for i in range(warmup + iterations):
            try:
                durations = _run_cycle(family, manifest)
            except KantKbError as exc:
                exc.partial_results = _build_results(config, samples, warmup)
                raise
            if i >= warmup:
                for task, duration in zip(TASK_NAMES, durations):
                    samples[task].append(duration)
                samples[TOTAL_NAME].append(sum(durations))
    finally:
        family.close()
    return _build_results(config, samples, warmup)


def _run_cycle(family, manifest: ScenarioManifest) -> list[float]:
    """One full five-task cycle; returns the five durations."""
    clock = time.perf_counter
    marks = [clock()]
    family.reset()
    marks.append(clock())
    load_into_kb(manifest.initial_entities(), family)
    marks.append(clock())
    manifest.run_task(family, "check_tables")
    marks.append(clock())
    manifest.run_task(family, "serve_order")
    marks.append(clock())
    manifest.run_task(family, "guide_person")
    marks.append(clock())
    return [marks[i + 1] - marks[i] for i in range(5)]


def _build_results(
    config: BackendConfig, samples: dict[str, list[float]], warmup: int
) -> BenchmarkResults:
    recorded = len(samples[TOTAL_NAME])
    rows = {
        task: summarize(values) for task, values in samples.items() if values
    }
    return BenchmarkResults(
        backend=config.kind.value,
        iterations=recorded,
        warmup=warmup,
        samples={task: list(values) for task, values in samples.items()},
        rows=rows,
    )
