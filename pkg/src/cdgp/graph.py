"""Weighted graphs, CDGP instances and embeddings.

Vertices are ``0..n-1`` everywhere inside the library; 1-based ids only
appear in the text format and on the command line.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .errors import (
    DuplicateEdge,
    EmptyEmbedding,
    EmptyGraph,
    PartialEmbedding,
    SelfLoop,
    VertexOutOfRange,
    WrongModel,
    ZeroWeight,
)

Edge = tuple[int, int, int]


class WeightedGraph:
    """Simple undirected graph with positive integer edge weights.

    Immutable after construction. ``edges`` is stored normalised (``u < v``)
    and sorted; ``adj[v]`` lists ``(neighbor, weight)`` in ascending neighbor
    order.
    """

    __slots__ = ("n", "edges", "adj", "_weight")

    def __init__(self, n: int, edges: Iterable[Sequence[int]]):
        if n < 1:
            raise EmptyGraph(f"graph needs at least one vertex, got n={n}")
        seen: dict[tuple[int, int], int] = {}
        for e in edges:
            u, v, d = (int(t) for t in e)
            if not (0 <= u < n and 0 <= v < n):
                raise VertexOutOfRange(f"edge {(u, v, d)} has a vertex outside [0, {n})", edge=(u, v, d))
            if u == v:
                raise SelfLoop(f"edge {(u, v, d)} is a self-loop", edge=(u, v, d))
            if d < 1:
                raise ZeroWeight(f"edge {(u, v, d)} has weight < 1", edge=(u, v, d))
            key = (u, v) if u < v else (v, u)
            if key in seen:
                raise DuplicateEdge(f"edge {(u, v, d)} duplicates {key}", edge=(u, v, d))
            seen[key] = d
        self.n = n
        self.edges: tuple[Edge, ...] = tuple((u, v, d) for (u, v), d in sorted(seen.items()))
        adj: list[list[tuple[int, int]]] = [[] for _ in range(n)]
        for u, v, d in self.edges:
            adj[u].append((v, d))
            adj[v].append((u, d))
        for a in adj:
            a.sort()
        self.adj: tuple[tuple[tuple[int, int], ...], ...] = tuple(tuple(a) for a in adj)
        self._weight = seen

    @property
    def m(self) -> int:
        return len(self.edges)

    def weight(self, u: int, v: int) -> int:
        return self._weight[(u, v) if u < v else (v, u)]

    def has_edge(self, u: int, v: int) -> bool:
        return ((u, v) if u < v else (v, u)) in self._weight

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def neighbors(self, v: int) -> list[int]:
        return [w for w, _ in self.adj[v]]

    def total_weight(self) -> int:
        return sum(d for _, _, d in self.edges)

    def components(self) -> list[list[int]]:
        """Connected components, each sorted, ordered by smallest vertex."""
        seen = [False] * self.n
        out = []
        for s in range(self.n):
            if seen[s]:
                continue
            seen[s] = True
            comp = [s]
            queue = deque([s])
            while queue:
                v = queue.popleft()
                for w, _ in self.adj[v]:
                    if not seen[w]:
                        seen[w] = True
                        comp.append(w)
                        queue.append(w)
            out.append(sorted(comp))
        return out

    def is_connected(self) -> bool:
        return len(self.components()) == 1

    def with_weights(self, weight: int) -> "WeightedGraph":
        return WeightedGraph(self.n, [(u, v, weight) for u, v, _ in self.edges])

    def __eq__(self, other):
        if not isinstance(other, WeightedGraph):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __hash__(self):
        return hash((self.n, self.edges))

    def __repr__(self):
        return f"WeightedGraph(n={self.n}, m={self.m})"


def build_graph(n: int, edge_list: Iterable[Sequence[int]]) -> WeightedGraph:
    return WeightedGraph(n, edge_list)


class ConstraintOp(enum.Enum):
    EQ = "eq"
    GEQ = "geq"


class Objective(enum.Enum):
    DECISION = "decision"
    MINIMIZE_SPAN = "optimize"


@dataclass(frozen=True)
class Uniform:
    phi: int


@dataclass(frozen=True)
class PerEdge:
    pass


DistanceMode = Uniform | PerEdge

_MODEL_NAMES = {
    (ConstraintOp.EQ, False, Objective.DECISION): "EQ-CDGP",
    (ConstraintOp.EQ, False, Objective.MINIMIZE_SPAN): "MinEQ-CDGP",
    (ConstraintOp.GEQ, False, Objective.MINIMIZE_SPAN): "MinGEQ-CDGP",
    (ConstraintOp.EQ, True, Objective.DECISION): "EQ-CDGP-Unif",
    (ConstraintOp.EQ, True, Objective.MINIMIZE_SPAN): "MinEQ-CDGP-Unif",
    (ConstraintOp.GEQ, True, Objective.MINIMIZE_SPAN): "MinGEQ-CDGP-Unif",
}


@dataclass(frozen=True)
class Instance:
    graph: WeightedGraph
    op: ConstraintOp = ConstraintOp.EQ
    mode: DistanceMode = field(default_factory=PerEdge)
    objective: Objective = Objective.DECISION

    def __post_init__(self):
        if isinstance(self.mode, Uniform):
            if self.mode.phi < 1:
                raise ZeroWeight(f"uniform distance must be >= 1, got {self.mode.phi}")
            for e in self.graph.edges:
                if e[2] != self.mode.phi:
                    raise WrongModel(f"edge {e} disagrees with uniform distance {self.mode.phi}")

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def is_uniform(self) -> bool:
        return isinstance(self.mode, Uniform)

    @property
    def model_name(self) -> str | None:
        """Name of the matching problem variant, ``None`` for GEQ decision."""
        return _MODEL_NAMES.get((self.op, self.is_uniform, self.objective))

    def with_op(self, op: ConstraintOp) -> "Instance":
        return Instance(self.graph, op, self.mode, self.objective)

    def with_objective(self, objective: Objective) -> "Instance":
        return Instance(self.graph, self.op, self.mode, objective)

    def as_per_edge(self) -> "Instance":
        return Instance(self.graph, self.op, PerEdge(), self.objective)


def uniform_instance(n, pairs, phi, op=ConstraintOp.EQ, objective=Objective.DECISION) -> Instance:
    g = WeightedGraph(n, [(u, v, phi) for u, v in pairs])
    return Instance(g, op, Uniform(phi), objective)


@dataclass(frozen=True)
class Embedding:
    """Partial or total map vertex -> color (colors are positive integers)."""

    n: int
    colors: Mapping[int, int]

    def __post_init__(self):
        for v, c in self.colors.items():
            if not 0 <= v < self.n:
                raise VertexOutOfRange(f"vertex {v} outside [0, {self.n})")
            if c < 1:
                raise ValueError(f"vertex {v} has color {c} < 1")

    @classmethod
    def from_list(cls, colors: Sequence[int]) -> "Embedding":
        """Total embedding from a color list; 0 entries mean unassigned."""
        return cls(len(colors), {v: int(c) for v, c in enumerate(colors) if c})

    @property
    def total(self) -> bool:
        return len(self.colors) == self.n

    def as_list(self) -> list[int]:
        out = [0] * self.n
        for v, c in self.colors.items():
            out[v] = c
        return out

    def shifted(self, delta: int) -> "Embedding":
        return Embedding(self.n, {v: c + delta for v, c in self.colors.items()})

    def __getitem__(self, v: int) -> int:
        return self.colors[v]


def span(e: Embedding) -> int:
    if not e.colors:
        raise EmptyEmbedding("span of an empty embedding is undefined")
    return max(e.colors.values())


def edge_ok(op: ConstraintOp, gap: int, d: int) -> bool:
    return gap == d if op is ConstraintOp.EQ else gap >= d


@dataclass(frozen=True)
class CheckResult:
    violations: tuple[Edge, ...]
    edges_checked: int

    @property
    def valid(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.valid


def check_embedding(inst: Instance, e: Embedding) -> CheckResult:
    """Validate a total embedding against every edge constraint, once per edge."""
    if not e.total or e.n != inst.n:
        raise PartialEmbedding(f"embedding assigns {len(e.colors)} of {inst.n} vertices")
    x = e.colors
    bad = []
    checked = 0
    for u, v, d in inst.graph.edges:
        checked += 1
        if not edge_ok(inst.op, abs(x[u] - x[v]), d):
            bad.append((u, v, d))
    return CheckResult(tuple(bad), checked)
