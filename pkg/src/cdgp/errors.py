"""Exception hierarchy shared by every cdgp module."""


class CDGPError(Exception):
    """Base class for all library errors."""


class GraphError(CDGPError, ValueError):
    """Invalid graph construction. ``edge`` names the offending edge when known."""

    def __init__(self, message, edge=None):
        super().__init__(message)
        self.edge = edge


class SelfLoop(GraphError):
    pass


class DuplicateEdge(GraphError):
    pass


class ZeroWeight(GraphError):
    pass


class VertexOutOfRange(GraphError):
    pass


class EmptyGraph(GraphError):
    pass


class EmptyEmbedding(CDGPError, ValueError):
    pass


class PartialEmbedding(CDGPError, ValueError):
    pass


class InvalidEmbedding(CDGPError, ValueError):
    pass


class WrongModel(CDGPError, ValueError):
    """Operation called on an instance of the wrong constraint/distance model."""


class NotATree(CDGPError, ValueError):
    pass


class Disconnected(CDGPError, ValueError):
    pass


class TooFewElements(CDGPError, ValueError):
    pass


class BadEdgeCount(CDGPError, ValueError):
    pass


class TooLarge(CDGPError, ValueError):
    pass


class InstanceSyntaxError(CDGPError, ValueError):
    """Malformed instance file. ``line`` is 1-based."""

    def __init__(self, message, line):
        super().__init__(f"line {line}: {message}")
        self.line = line


class InconsistentUniformWeight(InstanceSyntaxError):
    pass


class DisconnectedGraphWarning(UserWarning):
    pass


class GenerationFailed(CDGPError, RuntimeError):
    """No graph of the requested class within the attempt budget."""
