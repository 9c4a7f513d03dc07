"""Benchmark harness: run strategies over instance suites and write CSV.

One row per (instance, strategy, mode) cell. Rows are written in plan order
as soon as their cell finishes, so an interrupted run keeps every completed
row on disk.
"""

from __future__ import annotations

import csv
import itertools
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence, TextIO

import numpy as np

from .generate import GenConfig, GraphClass, RNG_ID, generate_of_class
from .graph import ConstraintOp, Instance, Objective
from .instance_io import STATS_HEADER, read_instance, stats_row, write_instance
from .outcome import SearchStats, SolveOutcome
from .solver import Strategy, solve

BENCH_HEADER = STATS_HEADER + ("mode", "best_span")

MODE_NAMES = {Objective.DECISION: "decision", Objective.MINIMIZE_SPAN: "optimize"}


@dataclass
class BenchPlan:
    instances: list[tuple[str, Instance]]
    strategies: list[Strategy] = field(default_factory=lambda: list(Strategy))
    modes: list[Objective] = field(default_factory=lambda: [Objective.MINIMIZE_SPAN])
    time_limit: float | None = None
    node_limit: int | None = None

    def __post_init__(self):
        if not self.instances:
            raise ValueError("bench plan has no instances")
        if not self.strategies:
            raise ValueError("bench plan has no strategies")
        if not self.modes:
            raise ValueError("bench plan has no modes")

    def cells(self):
        return list(itertools.product(self.instances, self.modes, self.strategies))


def instance_name(cls: GraphClass | str, n: int, index: int) -> str:
    return f"{GraphClass(cls).value}{n}_{index}"


def generated_suite(
    classes: Sequence[GraphClass | str],
    sizes: Sequence[int],
    per_class: int,
    seed: int,
    weight_range: tuple[int, int] = (1, 30),
    op: ConstraintOp = ConstraintOp.EQ,
    max_attempts: int = 10_000,
) -> list[tuple[str, Instance]]:
    """``per_class`` instances of each class and size; each draws from its own seed."""
    out = []
    for cls in classes:
        cls = GraphClass(cls)
        for n in sizes:
            for idx in range(1, per_class + 1):
                # distinct deterministic seed per cell
                sub = hash_seed(seed, cls.value, n, idx)
                cfg = GenConfig(n=n, weight_range=weight_range, rng_seed=sub, op=op)
                out.append((instance_name(cls, n, idx), generate_of_class(cfg, cls, max_attempts)))
    return out


def hash_seed(seed: int, *parts) -> int:
    words = [seed] + [int.from_bytes(str(p).encode(), "little") % (1 << 63) for p in parts]
    return int(np.random.SeedSequence(words).generate_state(1, np.uint64)[0])


def write_suite(suite: Iterable[tuple[str, Instance]], directory, seed: int | None = None) -> list[Path]:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    paths = []
    for name, inst in suite:
        p = directory / f"{name}.cdgp"
        meta = [f"rng {RNG_ID}"] + ([f"seed {seed}"] if seed is not None else [])
        write_instance(p, inst, comments=meta)
        paths.append(p)
    return paths


def load_instances(paths: Iterable[str | os.PathLike]) -> list[tuple[str, Instance]]:
    return [(Path(p).stem, read_instance(p)) for p in paths]


def bench_row(name: str, strategy: Strategy, mode: Objective,
              outcome: SolveOutcome, stats: SearchStats) -> list[str]:
    best = ""
    if outcome.embedding is not None:
        best = str(outcome.span)
    return stats_row(name, strategy.label, outcome, stats) + [MODE_NAMES[mode], best]


def _run_cell(cell, time_limit, node_limit):
    (name, inst), mode, strategy = cell
    outcome, stats = solve(inst, strategy, mode, time_limit=time_limit, node_limit=node_limit)
    return bench_row(name, strategy, mode, outcome, stats)


def run_bench(plan: BenchPlan, out: TextIO, jobs: int = 1) -> int:
    """Write the CSV to ``out``; returns the number of data rows written."""
    w = csv.writer(out, lineterminator="\n")
    w.writerow(BENCH_HEADER)
    out.flush()
    written = 0
    cells = plan.cells()
    pool = ThreadPoolExecutor(max_workers=max(1, jobs))
    try:
        results = pool.map(lambda c: _run_cell(c, plan.time_limit, plan.node_limit), cells)
        for row in results:
            w.writerow(row)
            out.flush()
            written += 1
    finally:
        pool.shutdown(wait=False, cancel_futures=True)
        out.flush()
    return written


def read_bench_csv(text: str) -> list[dict[str, str]]:
    return list(csv.DictReader(text.splitlines()))

