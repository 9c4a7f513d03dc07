"""Solver result types shared by the recognizers, the search engine and the CLI."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .graph import Embedding, span


class Status(enum.Enum):
    FEASIBLE = "feasible"
    INFEASIBLE = "infeasible"
    TIMED_OUT = "timeout"


@dataclass(frozen=True)
class SolveOutcome:
    """Feasible(embedding) | Infeasible | TimedOut(best embedding or None).

    ``certificate`` carries an odd closed walk when infeasibility was proved
    by the bipartite recognizer.
    """

    status: Status
    embedding: Embedding | None = None
    certificate: tuple[int, ...] | None = None

    @classmethod
    def feasible(cls, embedding: Embedding) -> "SolveOutcome":
        return cls(Status.FEASIBLE, embedding)

    @classmethod
    def infeasible(cls, certificate=None) -> "SolveOutcome":
        return cls(Status.INFEASIBLE, None, certificate)

    @classmethod
    def timed_out(cls, best: Embedding | None = None) -> "SolveOutcome":
        return cls(Status.TIMED_OUT, best)

    @property
    def is_feasible(self) -> bool:
        return self.status is Status.FEASIBLE

    @property
    def span(self) -> int | None:
        """Span of the carried embedding (best-so-far for timeouts)."""
        return span(self.embedding) if self.embedding is not None else None


@dataclass
class SearchStats:
    nodes: int = 0
    prunes: int = 0
    bounds: int = 0
    solutions: int = 0
    time_to_first: float | None = None
    time_total: float = 0.0
    # span of every incumbent update, in order
    trace: list[int] = field(default_factory=list)
