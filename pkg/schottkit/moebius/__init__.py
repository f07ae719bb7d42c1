"""Möbius transformations and generalized circles on the Riemann sphere."""

from schottkit.moebius.exact import ExactMoebius, GaussianRational
from schottkit.moebius.models import (
    CAYLEY,
    CAYLEY_INVERSE,
    Circle,
    Classification,
    DegenerateMatrix,
    MapClass,
    MoebiusError,
    MoebiusMap,
    SpherePoint,
    chordal_distance,
    circle_through,
    classify,
    compose,
    disk_automorphism,
    fixed_points,
    map_circle,
)

__all__ = [
    "CAYLEY",
    "CAYLEY_INVERSE",
    "Circle",
    "Classification",
    "DegenerateMatrix",
    "ExactMoebius",
    "GaussianRational",
    "MapClass",
    "MoebiusError",
    "MoebiusMap",
    "SpherePoint",
    "chordal_distance",
    "circle_through",
    "classify",
    "compose",
    "disk_automorphism",
    "fixed_points",
    "map_circle",
]
