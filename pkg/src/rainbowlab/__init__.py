"""Edge-colored graphs, extremal colorings and exact searches for disjoint
rainbow triangles."""

from .ecgraph import (
    EdgeColoredGraph,
    RainbowTriple,
    build,
    color_degree,
    color_number,
    induced_subgraph,
    is_rainbow_triple,
    min_color_degree,
    remove_edge,
)
from .packing import PackingMode, SearchResult, Status, TrianglePacking, find_packing, max_packing

__version__ = "0.1.0"

__all__ = [
    "EdgeColoredGraph",
    "RainbowTriple",
    "build",
    "color_degree",
    "color_number",
    "induced_subgraph",
    "is_rainbow_triple",
    "min_color_degree",
    "remove_edge",
    "PackingMode",
    "SearchResult",
    "Status",
    "TrianglePacking",
    "find_packing",
    "max_packing",
]
