"""Linear-time feasibility recognizers with constructive embeddings.

* uniform-distance equality instances are feasible exactly when the graph is
  bipartite; the two sides get colors ``1`` and ``1 + phi``;
* equality instances on trees are always feasible, whatever the weights.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .errors import NotATree, WrongModel
from .graph import ConstraintOp, Embedding, Instance, Uniform, WeightedGraph
from .outcome import SolveOutcome


@dataclass(frozen=True)
class BipartiteResult:
    """Either ``sides`` (vertex -> 0/1) or an odd closed walk ``odd_cycle``."""

    sides: tuple[int, ...] | None = None
    odd_cycle: tuple[int, ...] | None = None

    @property
    def is_bipartite(self) -> bool:
        return self.sides is not None


def _tree_path_to_root(parent, v):
    path = [v]
    while parent[v] != -1:
        v = parent[v]
        path.append(v)
    return path


def bipartite_check(g: WeightedGraph) -> BipartiteResult:
    """BFS 2-coloring, component by component.

    On failure the certificate is ``[a, ..., a]``: the two BFS-tree paths from
    the endpoints of a same-side edge up to their lowest common ancestor,
    closed by that edge. Its length (number of edges) is odd.
    """
    side = [-1] * g.n
    parent = [-1] * g.n
    for s in range(g.n):
        if side[s] != -1:
            continue
        side[s] = 0
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for w, _ in g.adj[v]:
                if side[w] == -1:
                    side[w] = 1 - side[v]
                    parent[w] = v
                    queue.append(w)
                elif side[w] == side[v]:
                    return BipartiteResult(odd_cycle=_odd_cycle(parent, v, w))
    return BipartiteResult(sides=tuple(side))


def _odd_cycle(parent, u, w):
    pu = _tree_path_to_root(parent, u)
    pw = _tree_path_to_root(parent, w)
    on_pw = {v: i for i, v in enumerate(pw)}
    for i, a in enumerate(pu):
        if a in on_pw:
            lca_u, lca_w = i, on_pw[a]
            break
    # u -> ... -> lca -> ... -> w -> u
    walk = pu[: lca_u + 1] + pw[:lca_w][::-1] + [u]
    return tuple(walk)


def verify_odd_cycle(g: WeightedGraph, walk) -> bool:
    walk = list(walk)
    if len(walk) < 4 or walk[0] != walk[-1]:
        return False
    if (len(walk) - 1) % 2 == 0:
        return False
    return all(g.has_edge(a, b) for a, b in zip(walk, walk[1:]))


def solve_eq_unif(inst: Instance) -> SolveOutcome:
    if inst.op is not ConstraintOp.EQ or not isinstance(inst.mode, Uniform):
        raise WrongModel("solve_eq_unif needs an equality instance with uniform distances")
    res = bipartite_check(inst.graph)
    if not res.is_bipartite:
        return SolveOutcome.infeasible(certificate=res.odd_cycle)
    phi = inst.mode.phi
    colors = {v: 1 + phi * s for v, s in enumerate(res.sides)}
    return SolveOutcome.feasible(Embedding(inst.n, colors))


def is_tree(g: WeightedGraph) -> bool:
    return g.m == g.n - 1 and g.is_connected()


def embed_tree(inst: Instance) -> Embedding:
    """Feasible equality embedding of a tree by BFS marking from vertex 0.

    The root gets color 1. Each newly reached vertex sits at exactly the edge
    weight from its parent, below the parent when that stays >= 1, above
    otherwise. This guarantees feasibility only; the span is not minimised.
    """
    if inst.op is not ConstraintOp.EQ:
        raise WrongModel("embed_tree needs an equality instance")
    g = inst.graph
    if not is_tree(g):
        raise NotATree(f"graph with n={g.n}, m={g.m} is not a tree")
    x = [0] * g.n
    x[0] = 1
    queue = deque([0])
    while queue:
        k = queue.popleft()
        for j, d in g.adj[k]:
            if x[j]:
                continue
            x[j] = x[k] - d if x[k] - d >= 1 else x[k] + d
            queue.append(j)
    return Embedding.from_list(x)
