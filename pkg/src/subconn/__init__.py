"""Fully dynamic subgraph connectivity with worst-case update bounds.

Maintains a graph G and an active vertex set S under vertex switches, edge
insertions and deletions, and answers whether two active vertices are
connected in G[S].  Positive answers are always right; negative answers are
right with high probability.
"""

from .core import Config, SubgraphConnectivity, VertexClass, validate_config
from .errors import (
    AlreadyConnectedError,
    DifferentTreesError,
    NotATreeEdgeError,
    PreconditionError,
    StaleHandleError,
    SubconnError,
    TraceFormatError,
    UnknownVertexError,
)
from .metering import METER

__all__ = [
    "Config",
    "SubgraphConnectivity",
    "VertexClass",
    "validate_config",
    "METER",
    "SubconnError",
    "PreconditionError",
    "AlreadyConnectedError",
    "NotATreeEdgeError",
    "DifferentTreesError",
    "StaleHandleError",
    "UnknownVertexError",
    "TraceFormatError",
]
