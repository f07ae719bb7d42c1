"""Exact Cantor intervals, the circles around them and their pants graph."""

from schottkit.cantor.circles import (
    AXIS,
    RADIUS_RATIO,
    CantorCircle,
    CircleFamily,
    DisjointnessCertificate,
    brute_force_min_gap,
    cantor_circle,
    cantor_circles,
    gap,
    level_one_image,
    self_similarity_holds,
)
from schottkit.cantor.graph import (
    IsomorphismResult,
    PantsGraph,
    PantsNode,
    graph_isomorphic_to_xinfty,
    isomorphism_to,
    pants_graph,
    pants_index,
)
from schottkit.cantor.intervals import (
    MAX_LEVEL,
    CantorError,
    LevelLimitError,
    TriadicInterval,
    cantor_intervals,
    interval,
    level_indices,
    parent_index,
)

__all__ = [
    "AXIS",
    "MAX_LEVEL",
    "RADIUS_RATIO",
    "CantorCircle",
    "CantorError",
    "CircleFamily",
    "DisjointnessCertificate",
    "IsomorphismResult",
    "LevelLimitError",
    "PantsGraph",
    "PantsNode",
    "TriadicInterval",
    "brute_force_min_gap",
    "cantor_circle",
    "cantor_circles",
    "cantor_intervals",
    "gap",
    "graph_isomorphic_to_xinfty",
    "interval",
    "isomorphism_to",
    "level_indices",
    "level_one_image",
    "pants_graph",
    "pants_index",
    "parent_index",
    "self_similarity_holds",
]
