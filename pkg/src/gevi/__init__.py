"""Group evolution analysis for time-sliced interaction graphs.

The pipeline: parse a timestamped interaction log, build one weighted
undirected graph per (overlapping) time slot, extract overlapping
communities per slot by k-clique percolation, link communities across
consecutive slots, classify the evolution events on those links, lay each
hierarchy out in slot-aligned layers, and expose the whole result as a
single JSON artifact behind a read-only HTTP API.
"""

__version__ = "0.1.0"

from gevi.ingest import Message, TimeSlot, SlotGraph
from gevi.cpm import Group
from gevi.evolution import EvolutionParams, Transition, EvolutionGraph, EventKind

__all__ = [
    "Message",
    "TimeSlot",
    "SlotGraph",
    "Group",
    "EvolutionParams",
    "Transition",
    "EvolutionGraph",
    "EventKind",
    "__version__",
]
