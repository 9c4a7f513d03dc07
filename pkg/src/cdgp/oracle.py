"""Exhaustive reference solver for small instances.

Finds the minimum span by trying every coloring with colors in ``[1, s]``.
Vertices are assigned in BFS order. A vertex whose color breaks an edge to an
already-assigned vertex is rejected at once; this drops only colorings that
are invalid anyway, so the verdict for each ``s`` is exact.

Feasibility is monotone in ``s`` (a coloring within ``[1, s]`` is also within
``[1, s + 1]``), so the smallest feasible ``s`` is located by bisection
rather than by stepping ``s = 1, 2, ...``; both give the same answer.

Inequality instances use a second exhaustive scheme, over vertex orders
instead of colors. Given an order, place each vertex at the lowest color that
keeps its distance to every neighbor already placed. Sorting any valid
embedding ``y`` by color gives an order whose greedy placement ``x`` satisfies
``x <= y`` vertex by vertex (induction along the order), so the best greedy
span over all ``n!`` orders is the optimum. The color scan above is
exponential in the weights and stalls on dense graphs with weights near 30;
the order scan is not.

Why ``1 + sum(d)`` is a safe default cap:

* Colors can be translated so the smallest is 1 (both constraint kinds only
  look at differences).
* Equality, connected graph: along a spanning walk consecutive colors differ
  by exactly the edge weight, so every color is within ``sum(d)`` of the
  smallest one.
* Inequality: order the vertices and give each one the previous color plus
  the largest weight to an earlier neighbor. Every edge then spans at least
  its weight and the top color is at most ``1 + sum(d)``.

So an instance with no embedding of span at most ``1 + sum(d)`` has none at
all, unless the graph is disconnected and constrained by equality (then each
component is shifted independently and the bound still holds per component).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .errors import TooLarge
from .graph import ConstraintOp, Embedding, Instance
from .outcome import SolveOutcome

DEFAULT_LIMIT = 9


@dataclass(frozen=True)
class OracleResult:
    outcome: SolveOutcome
    explored: int
    span_cap: int
    # False when a caller-supplied cap is below the safe bound: "Infeasible"
    # then only means no embedding with span <= span_cap.
    definitive: bool = True

    @property
    def is_feasible(self) -> bool:
        return self.outcome.is_feasible

    @property
    def span(self) -> int | None:
        return self.outcome.span


def safe_cap(inst: Instance) -> int:
    return 1 + inst.graph.total_weight()


def bfs_order(inst: Instance) -> list[int]:
    g = inst.graph
    seen = [False] * g.n
    order = []
    for s in range(g.n):
        if seen[s]:
            continue
        seen[s] = True
        queue = deque([s])
        while queue:
            v = queue.popleft()
            order.append(v)
            for w, _ in g.adj[v]:
                if not seen[w]:
                    seen[w] = True
                    queue.append(w)
    return order


class _Enumerator:
    def __init__(self, inst: Instance):
        self.n = inst.n
        self.eq = inst.op is ConstraintOp.EQ
        self.order = bfs_order(inst)
        pos = {v: i for i, v in enumerate(self.order)}
        # constraints against vertices placed earlier in the order
        self.back = [
            [(w, d) for w, d in inst.graph.adj[v] if pos[w] < pos[v]]
            for v in range(self.n)
        ]
        self.explored = 0

    def first(self, s: int) -> list[int] | None:
        """Lexicographically first valid coloring in [1, s] (BFS order), or None."""
        x = [0] * self.n
        eq = self.eq

        def place(t):
            if t == self.n:
                return True
            v = self.order[t]
            back = self.back[v]
            for c in range(1, s + 1):
                self.explored += 1
                ok = True
                for w, d in back:
                    g = abs(x[w] - c)
                    if (g != d) if eq else (g < d):
                        ok = False
                        break
                if ok:
                    x[v] = c
                    if place(t + 1):
                        return True
            x[v] = 0
            return False

        return list(x) if place(0) else None


def _best_over_orders(inst: Instance) -> tuple[int, list[int], int]:
    g = inst.graph
    n = g.n
    x = [0] * n
    best = [None, None]
    explored = 0

    def extend(t, top):
        nonlocal explored
        if t == n:
            if best[0] is None or top < best[0]:
                best[0], best[1] = top, list(x)
            return
        for v in range(n):
            if x[v]:
                continue
            explored += 1
            c = 1
            for w, d in g.adj[v]:
                if x[w] and x[w] + d > c:
                    c = x[w] + d
            # greedy colors never decrease the running maximum
            if best[0] is not None and max(top, c) >= best[0]:
                continue
            x[v] = c
            extend(t + 1, max(top, c))
            x[v] = 0

    extend(0, 0)
    return best[0], best[1], explored


def oracle_solve(
    inst: Instance,
    span_cap: int | None = None,
    limit: int = DEFAULT_LIMIT,
    method: str = "auto",
) -> OracleResult:
    """Minimum-span embedding by exhaustive enumeration, or Infeasible.

    The witness is deterministic: for equality, the first valid coloring at
    the optimum in BFS order; for inequality, the greedy placement of the
    first optimal vertex order.

    ``method`` is ``"colors"``, ``"orders"`` (inequality only) or ``"auto"``.
    """
    if inst.n > limit:
        raise TooLarge(f"oracle limited to n <= {limit}, got n={inst.n}")
    safe = safe_cap(inst)
    cap = safe if span_cap is None else int(span_cap)
    if cap < 1:
        raise ValueError("span_cap must be >= 1")
    definitive = cap >= safe

    if method not in ("auto", "colors", "orders"):
        raise ValueError(f"unknown oracle method {method!r}")
    if method == "orders" and inst.op is not ConstraintOp.GEQ:
        raise ValueError("the vertex-order scan only applies to inequality instances")
    if method == "orders" or (method == "auto" and inst.op is ConstraintOp.GEQ):
        opt, witness, explored = _best_over_orders(inst)
        if opt > cap:
            return OracleResult(SolveOutcome.infeasible(), explored, cap, definitive)
        return OracleResult(SolveOutcome.feasible(Embedding.from_list(witness)), explored, cap, True)

    en = _Enumerator(inst)
    top = en.first(cap)
    if top is None:
        return OracleResult(SolveOutcome.infeasible(), en.explored, cap, definitive)

    lo = 1 + max((d for _, _, d in inst.graph.edges), default=0)
    hi, witness = cap, top
    # invariant: hi feasible with witness; everything below lo infeasible
    while lo < hi:
        mid = (lo + hi) // 2
        w = en.first(mid)
        if w is None:
            lo = mid + 1
        else:
            hi, witness = mid, w
    return OracleResult(SolveOutcome.feasible(Embedding.from_list(witness)), en.explored, cap, True)
