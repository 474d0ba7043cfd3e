"""n-level recursive bisection hypergraph partitioning."""

from .hypergraph import ContractViolation, ContractionMemento, Hypergraph, NetRemovalRecord
from .partitioner import PartitionerConfig, PartitionResult, adapt_epsilon, partition

__all__ = [
    "ContractViolation",
    "ContractionMemento",
    "Hypergraph",
    "NetRemovalRecord",
    "PartitionResult",
    "PartitionerConfig",
    "adapt_epsilon",
    "partition",
]
__version__ = "0.1.0"
