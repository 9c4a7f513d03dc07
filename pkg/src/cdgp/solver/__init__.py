"""Branch-prune-and-bound search for CDGP instances.

The search colors a start vertex with 1 and walks the graph: each step picks
an uncolored neighbor of the vertex just colored (every such neighbor is a
branch), colors it with candidates from the chosen :class:`Strategy`, bounds
partial colorings whose span reaches the incumbent, and prunes on distance
violations. When the walk is stuck it resumes from the lowest-id uncolored
vertex that has a colored neighbor recorded as its predecessor.

Every vertex is tried as the start vertex unless ``seed_vertex`` is given,
because the start vertex is pinned to color 1.
"""

from __future__ import annotations

import enum
import time
import warnings
from typing import Mapping, Sequence

from ..errors import DisconnectedGraphWarning, InvalidEmbedding
from ..graph import ConstraintOp, Embedding, Instance, Objective, check_embedding, edge_ok
from ..outcome import SearchStats, SolveOutcome
from . import backend
from ._pysearch import EXHAUSTED, FOUND, NODE_LIMIT, PREV, PREV_FULL, SELECT, TIMEOUT

__all__ = [
    "Strategy", "solve", "select_colors_prev", "select_colors_system",
    "ddcf_check", "initial_upper_bound", "csr",
]


class Strategy(enum.Enum):
    PREV = "prev"
    PREV_FEAS_CHECK_FULL = "prev-full"
    SELECT = "select"

    @property
    def code(self) -> int:
        return {"prev": PREV, "prev-full": PREV_FULL, "select": SELECT}[self.value]

    @property
    def label(self) -> str:
        return {"prev": "BPB-Prev", "prev-full": "BPB-Prev-FeasCheckFull", "select": "BPB-Select"}[self.value]


def _colors(x) -> Mapping[int, int]:
    if isinstance(x, Embedding):
        return x.colors
    if isinstance(x, Mapping):
        return x
    return {v: c for v, c in enumerate(x) if c}


def select_colors_prev(inst: Instance, x, i: int | None, j: int) -> list[int]:
    """Candidate colors for ``j`` from the previous vertex ``i``, lower first."""
    if i is None or i == -1:
        return [1]
    xi = _colors(x)[i]
    d = inst.graph.weight(i, j)
    return [xi - d, xi + d] if xi > d else [xi + d]


def select_colors_system(inst: Instance, x, j: int, ub: int) -> list[int]:
    """Smallest ``k`` in ``[1, ub]`` meeting every colored neighbor's constraint.

    Literal scan over the interval; the kernels compute the same value
    without scanning.
    """
    xs = _colors(x)
    colored = [(xs[w], d) for w, d in inst.graph.adj[j] if w in xs]
    for k in range(1, ub + 1):
        if all(edge_ok(inst.op, abs(xw - k), d) for xw, d in colored):
            return [k]
    return []


def ddcf_check(inst: Instance, x, i: int) -> bool:
    """Check the just-colored vertex ``i`` against its colored neighbors."""
    xs = _colors(x)
    xi = xs[i]
    for k, d in inst.graph.adj[i]:
        if k in xs and not edge_ok(inst.op, abs(xs[k] - xi), d):
            return False
    return True


def initial_upper_bound(inst: Instance) -> int:
    """1 + total edge weight: no optimal span (EQ or GEQ) exceeds it."""
    return 1 + inst.graph.total_weight()


def csr(inst: Instance):
    indptr, nbr, wt = [0], [], []
    for v in range(inst.n):
        for w, d in inst.graph.adj[v]:
            nbr.append(w)
            wt.append(d)
        indptr.append(len(nbr))
    return indptr, nbr, wt


def _objective(mode) -> Objective:
    if isinstance(mode, Objective):
        return mode
    return {"decision": Objective.DECISION, "optimize": Objective.MINIMIZE_SPAN,
            "optimise": Objective.MINIMIZE_SPAN}[str(mode).lower()]


def solve(
    inst: Instance,
    strategy: Strategy | str = Strategy.PREV,
    mode: Objective | str | None = None,
    time_limit: float | None = None,
    node_limit: int | None = None,
    seed_vertex: int | None = None,
    ub: int | None = None,
    backend_name: str | None = None,
) -> tuple[SolveOutcome, SearchStats]:
    """Run the search; returns ``(outcome, stats)``.

    ``mode`` defaults to the instance objective. ``ub`` overrides the span
    envelope: only embeddings with span <= ``ub`` are searched. Running out of
    time or nodes yields a TimedOut outcome carrying the incumbent, if any.
    """
    strategy = Strategy(strategy)
    objective = _objective(mode if mode is not None else inst.objective)
    if time_limit is not None and time_limit <= 0:
        raise ValueError("time_limit must be > 0")
    if node_limit is not None and node_limit <= 0:
        raise ValueError("node_limit must be > 0")
    if seed_vertex is not None and not 0 <= seed_vertex < inst.n:
        raise ValueError(f"seed_vertex {seed_vertex} outside [0, {inst.n})")
    if not inst.graph.is_connected():
        warnings.warn(
            "graph is disconnected; components are searched one after another",
            DisconnectedGraphWarning, stacklevel=2,
        )
    envelope = initial_upper_bound(inst) if ub is None else int(ub)
    roots = [seed_vertex] if seed_vertex is not None else list(range(inst.n))
    indptr, nbr, wt = csr(inst)
    search = backend.get_search(backend_name)

    t0 = time.perf_counter()
    status, best, nodes, prunes, bounds, sols, t_first, trace = search(
        inst.n, indptr, nbr, wt, inst.op is ConstraintOp.EQ, strategy.code,
        objective is Objective.DECISION, envelope + 1, roots,
        time_limit, -1 if node_limit is None else node_limit,
    )
    elapsed = time.perf_counter() - t0

    stats = SearchStats(
        nodes=nodes, prunes=prunes, bounds=bounds, solutions=sols,
        time_to_first=t_first if t_first >= 0 else None,
        time_total=elapsed, trace=list(trace),
    )
    emb = Embedding.from_list(best) if best is not None else None
    if emb is not None and not check_embedding(inst, emb).valid:
        raise InvalidEmbedding(f"search returned an invalid embedding {best}")
    if status in (TIMEOUT, NODE_LIMIT):
        return SolveOutcome.timed_out(emb), stats
    if emb is None:
        return SolveOutcome.infeasible(), stats
    assert status in (EXHAUSTED, FOUND)
    return SolveOutcome.feasible(emb), stats
