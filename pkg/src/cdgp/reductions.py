"""Partition <-> equality-CDGP on a weighted cycle.

A multiset ``M = (m_0, ..., m_{r-1})`` becomes the cycle ``0-1-...-(r-1)-0``
with edge ``(b, b+1 mod r)`` weighted ``m_b``. Walking the cycle, each edge
moves the color up or down by its weight and the walk returns to its start,
so the up-moves and the down-moves have equal sums.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InvalidEmbedding, TooFewElements
from .graph import ConstraintOp, Embedding, Instance, PerEdge, build_graph, check_embedding


@dataclass(frozen=True)
class PartitionInstance:
    values: tuple[int, ...]

    def __post_init__(self):
        vals = tuple(int(v) for v in self.values)
        if not vals:
            raise TooFewElements("partition instance needs at least one value")
        if any(v < 1 for v in vals):
            raise ValueError(f"partition values must be >= 1, got {vals}")
        object.__setattr__(self, "values", vals)

    @property
    def r(self) -> int:
        return len(self.values)


def partition_to_cdgp(p: PartitionInstance) -> Instance:
    if p.r < 3:
        raise TooFewElements(f"need r >= 3 values to build a cycle, got {p.r}")
    r = p.r
    edges = [(b, (b + 1) % r, m) for b, m in enumerate(p.values)]
    return Instance(build_graph(r, edges), op=ConstraintOp.EQ, mode=PerEdge())


def embedding_to_partition(p: PartitionInstance, e: Embedding) -> tuple[list[int], list[int]]:
    """Split ``M`` by edge direction: ``S1`` holds the weights of rising edges.

    Elements are positional, so repeated values are kept apart.
    """
    inst = partition_to_cdgp(p)
    if e.n != p.r or not e.total or not check_embedding(inst, e).valid:
        raise InvalidEmbedding("embedding is not a valid coloring of the reduced cycle")
    r = p.r
    s1, s2 = [], []
    for b, m in enumerate(p.values):
        a, c = e[b], e[(b + 1) % r]
        assert a != c  # weights >= 1 rule out ties
        (s1 if a < c else s2).append(m)
    assert sum(s1) == sum(s2)
    return s1, s2


def has_equal_split(values) -> bool:
    """Subset-sum brute force: can ``values`` be split into two equal halves?"""
    total = sum(values)
    if total % 2:
        return False
    reach = {0}
    for v in values:
        reach |= {s + v for s in reach}
    return total // 2 in reach
