"""Random instance generation and structural census.

Skeleton: a uniform random labeled spanning tree from a random walk on the
complete graph (each vertex joins the tree through the edge the walk first
enters it by), topped up with uniformly chosen extra edges. Edge weights are
i.i.d. uniform integers, or one constant in uniform mode.

All randomness comes from ``numpy.random.default_rng(seed)`` (PCG64);
``RNG_ID`` names it in file metadata.
"""

from __future__ import annotations

import enum
import time
from dataclasses import dataclass

import numpy as np

from .errors import BadEdgeCount, Disconnected, GenerationFailed
from .graph import ConstraintOp, Instance, PerEdge, Uniform, WeightedGraph
from .recognizers import bipartite_check

RNG_ID = "numpy.PCG64"

# below this target density, rejection sampling of absent pairs is cheap
_REJECTION_MAX_DENSITY = 0.75
_BATCH = 256


class GraphClass(enum.Enum):
    TREE = "tree"
    EVEN_CYCLES_ONLY = "evencycle"
    HAS_ODD_CYCLE = "oddcycle"


@dataclass(frozen=True)
class GenConfig:
    n: int
    m: int | str = "random"
    weight_range: tuple[int, int] = (1, 30)
    uniform_phi: int | None = None
    rng_seed: int = 0
    op: ConstraintOp = ConstraintOp.EQ

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"n must be >= 1, got {self.n}")
        lo, hi = self.weight_range
        if not 1 <= lo <= hi:
            raise ValueError(f"weight range must satisfy 1 <= lo <= hi, got {self.weight_range}")
        if self.uniform_phi is not None and self.uniform_phi < 1:
            raise ValueError("uniform_phi must be >= 1")
        if self.m != "random":
            _check_m(self.n, self.m)


def max_edges(n: int) -> int:
    return n * (n - 1) // 2


def _check_m(n, m):
    if not isinstance(m, (int, np.integer)) or not n - 1 <= m <= max_edges(n):
        raise BadEdgeCount(f"m={m} outside [{n - 1}, {max_edges(n)}] for n={n}")


def _pair(a, b):
    return (a, b) if a < b else (b, a)


def random_spanning_tree(n: int, rng: np.random.Generator) -> list[tuple[int, int]]:
    """Edges ``(u, v)``, ``u < v``, of a uniform random labeled tree on ``n`` vertices."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if n == 1:
        return []
    cur = int(rng.integers(n))
    in_tree = [False] * n
    in_tree[cur] = True
    left = n - 1
    edges = []
    while left:
        for r in rng.integers(0, n - 1, size=_BATCH):
            # uniform over the n-1 vertices other than cur
            nxt = int(r) + (r >= cur)
            if not in_tree[nxt]:
                in_tree[nxt] = True
                edges.append(_pair(cur, nxt))
                left -= 1
            cur = nxt
            if not left:
                break
    edges.sort()
    return edges


def augment_edges(tree_edges, n: int, m: int, rng: np.random.Generator) -> list[tuple[int, int]]:
    """Add uniformly chosen absent pairs until there are exactly ``m`` edges."""
    _check_m(n, m)
    present = set(_pair(u, v) for u, v in tree_edges)
    if len(present) != n - 1:
        raise BadEdgeCount(f"expected {n - 1} tree edges, got {len(present)}")
    need = m - len(present)
    if need and m / max_edges(n) < _REJECTION_MAX_DENSITY:
        while need:
            draws = rng.integers(0, n, size=(max(_BATCH, 2 * need), 2))
            for a, b in draws.tolist():
                if a == b:
                    continue
                p = _pair(a, b)
                if p not in present:
                    present.add(p)
                    need -= 1
                    if not need:
                        break
    elif need:
        absent = [(u, v) for u in range(n) for v in range(u + 1, n) if (u, v) not in present]
        for i in rng.permutation(len(absent))[:need]:
            present.add(absent[i])
    return sorted(present)


def _sample_edges(n, m, rng):
    if m == "random":
        m = int(rng.integers(n - 1, max_edges(n), endpoint=True))
    return augment_edges(random_spanning_tree(n, rng), n, m, rng)


def _sample(cfg: GenConfig, rng: np.random.Generator) -> Instance:
    pairs = _sample_edges(cfg.n, cfg.m, rng)
    if cfg.uniform_phi is not None:
        phi = cfg.uniform_phi
        g = WeightedGraph(cfg.n, [(u, v, phi) for u, v in pairs])
        return Instance(g, op=cfg.op, mode=Uniform(phi))
    lo, hi = cfg.weight_range
    weights = rng.integers(lo, hi, endpoint=True, size=len(pairs)).tolist()
    g = WeightedGraph(cfg.n, [(u, v, w) for (u, v), w in zip(pairs, weights)])
    return Instance(g, op=cfg.op, mode=PerEdge())


def generate(cfg: GenConfig) -> Instance:
    return _sample(cfg, np.random.default_rng(cfg.rng_seed))


def generate_of_class(cfg: GenConfig, cls: GraphClass | str, max_attempts: int = 10_000) -> Instance:
    """Draw instances from one seeded stream until one has class ``cls``."""
    cls = GraphClass(cls)
    rng = np.random.default_rng(cfg.rng_seed)
    for _ in range(max_attempts):
        inst = _sample(cfg, rng)
        if classify(inst.graph) is cls:
            return inst
    raise GenerationFailed(f"no {cls.value} graph with n={cfg.n} in {max_attempts} attempts")


def classify(g: WeightedGraph) -> GraphClass:
    if not g.is_connected():
        raise Disconnected("classify needs a connected graph")
    if g.m == g.n - 1:
        return GraphClass.TREE
    if bipartite_check(g).is_bipartite:
        return GraphClass.EVEN_CYCLES_ONLY
    return GraphClass.HAS_ODD_CYCLE


@dataclass(frozen=True)
class CensusRow:
    n: int
    graphs_generated: int
    avg_edges: float
    avg_density: float
    odd_cycle_count: int
    even_cycle_count: int
    tree_count: int
    bipartite_count: int
    cpu_seconds: float

    HEADER = ("n", "graphs", "avg_edges", "avg_density", "odd", "even", "trees", "bipartite", "cpu_s")

    def as_row(self) -> list[str]:
        return [
            str(self.n), str(self.graphs_generated), f"{self.avg_edges:.4f}",
            f"{self.avg_density:.4f}", str(self.odd_cycle_count), str(self.even_cycle_count),
            str(self.tree_count), str(self.bipartite_count), f"{self.cpu_seconds:.3f}",
        ]

    @property
    def odd_fraction(self) -> float:
        return self.odd_cycle_count / self.graphs_generated


def census(n: int, count: int, rng_seed: int = 0) -> CensusRow:
    """Generate ``count`` skeletons with random ``m`` and tally their classes."""
    if count < 1:
        raise ValueError("count must be >= 1")
    rng = np.random.default_rng(rng_seed)
    t0 = time.process_time()
    tally = {c: 0 for c in GraphClass}
    bipartite = 0
    edges_total = 0
    density_total = 0.0
    for _ in range(count):
        pairs = _sample_edges(n, "random", rng)
        g = WeightedGraph(n, [(u, v, 1) for u, v in pairs])
        cls = classify(g)
        tally[cls] += 1
        if cls is not GraphClass.HAS_ODD_CYCLE:
            bipartite += 1
        edges_total += g.m
        density_total += g.m / max_edges(n) if n > 1 else 0.0
    return CensusRow(
        n=n, graphs_generated=count,
        avg_edges=edges_total / count, avg_density=density_total / count,
        odd_cycle_count=tally[GraphClass.HAS_ODD_CYCLE],
        even_cycle_count=tally[GraphClass.EVEN_CYCLES_ONLY],
        tree_count=tally[GraphClass.TREE],
        bipartite_count=bipartite,
        cpu_seconds=time.process_time() - t0,
    )
