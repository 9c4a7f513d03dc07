"""Text format for CDGP instances and CSV output for search statistics.

Grammar (``#`` starts a comment that runs to end of line; blank lines are
ignored)::

    p cdgp <n> <m> <eq|geq> <peredge|uniform <phi>>
    e <u> <v> <d>          # exactly m lines, 1-based vertex ids

The objective (decision vs optimize) is not part of the file; it is chosen
when the solver is invoked.
"""

from __future__ import annotations

import csv
import io
from typing import Iterable

from .errors import InconsistentUniformWeight, InstanceSyntaxError
from .graph import ConstraintOp, Instance, Objective, PerEdge, Uniform, WeightedGraph
from .outcome import SearchStats, SolveOutcome, Status

STATS_HEADER = (
    "instance", "strategy", "span", "bounds", "prunes",
    "solutions", "nodes", "time_first_s", "time_total_s",
)


def _int(tok: str, lineno: int, what: str) -> int:
    if not (tok.isascii() and tok.isdigit()):
        raise InstanceSyntaxError(f"expected non-negative integer for {what}, got {tok!r}", lineno)
    return int(tok)


def parse_instance(text: str | bytes, objective: Objective = Objective.DECISION) -> Instance:
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    header = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        toks = raw.split("#", 1)[0].split()
        if not toks:
            continue
        if toks[0] == "p":
            if header is not None:
                raise InstanceSyntaxError("second header line", lineno)
            if len(toks) < 6 or toks[1] != "cdgp":
                raise InstanceSyntaxError("header must be 'p cdgp <n> <m> <op> <mode>'", lineno)
            n = _int(toks[2], lineno, "n")
            m = _int(toks[3], lineno, "m")
            try:
                op = ConstraintOp(toks[4])
            except ValueError:
                raise InstanceSyntaxError(f"unknown constraint op {toks[4]!r}", lineno) from None
            if toks[5] == "peredge" and len(toks) == 6:
                mode = PerEdge()
            elif toks[5] == "uniform" and len(toks) == 7:
                mode = Uniform(_int(toks[6], lineno, "phi"))
                if mode.phi < 1:
                    raise InstanceSyntaxError("uniform distance must be >= 1", lineno)
            else:
                raise InstanceSyntaxError(f"bad distance mode {' '.join(toks[5:])!r}", lineno)
            if n < 1:
                raise InstanceSyntaxError("n must be >= 1", lineno)
            header = (n, m, op, mode)
        elif toks[0] == "e":
            if header is None:
                raise InstanceSyntaxError("edge line before header", lineno)
            if len(toks) != 4:
                raise InstanceSyntaxError("edge must be 'e <u> <v> <d>'", lineno)
            u, v, d = (_int(t, lineno, name) for t, name in zip(toks[1:], "uvd"))
            n, _, _, mode = header
            if not (1 <= u <= n and 1 <= v <= n):
                raise InstanceSyntaxError(f"vertex id out of range 1..{n}", lineno)
            if isinstance(mode, Uniform) and d != mode.phi:
                raise InconsistentUniformWeight(f"weight {d} differs from uniform distance {mode.phi}", lineno)
            edges.append((u - 1, v - 1, d))
            if len(edges) > header[1]:
                raise InstanceSyntaxError(f"more than m={header[1]} edge lines", lineno)
        else:
            raise InstanceSyntaxError(f"unrecognised line {raw.strip()!r}", lineno)
    if header is None:
        raise InstanceSyntaxError("missing header line", 1)
    n, m, op, mode = header
    if len(edges) != m:
        raise InstanceSyntaxError(f"header declares m={m} edges, found {len(edges)}", lineno)
    return Instance(WeightedGraph(n, edges), op, mode, objective)


def serialize_instance(inst: Instance) -> str:
    g = inst.graph
    mode = f"uniform {inst.mode.phi}" if isinstance(inst.mode, Uniform) else "peredge"
    lines = [f"p cdgp {g.n} {g.m} {inst.op.value} {mode}"]
    lines.extend(f"e {u + 1} {v + 1} {d}" for u, v, d in g.edges)
    return "\n".join(lines) + "\n"


def read_instance(path, objective: Objective = Objective.DECISION) -> Instance:
    with open(path, "rb") as f:
        return parse_instance(f.read(), objective)


def write_instance(path, inst: Instance, comments: Iterable[str] = ()) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        for c in comments:
            f.write(f"# {c}\n")
        f.write(serialize_instance(inst))


def span_cell(outcome: SolveOutcome) -> str:
    if outcome.status is Status.INFEASIBLE:
        return "infeasible"
    if outcome.status is Status.TIMED_OUT:
        return "timeout"
    return str(outcome.span)


def fmt_seconds(t: float | None) -> str:
    return "" if t is None else f"{t:.3f}"


def stats_row(name: str, strategy: str, outcome: SolveOutcome, stats: SearchStats) -> list[str]:
    return [
        name, strategy, span_cell(outcome),
        str(stats.bounds), str(stats.prunes), str(stats.solutions), str(stats.nodes),
        fmt_seconds(stats.time_to_first), fmt_seconds(stats.time_total),
    ]


def emit_stats_csv(rows: Iterable[tuple[str, str, SolveOutcome, SearchStats]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(STATS_HEADER)
    for name, strategy, outcome, stats in rows:
        w.writerow(stats_row(name, strategy, outcome, stats))
    return buf.getvalue()
