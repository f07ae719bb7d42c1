"""Schottky groups: validation, reduced words, exhaustions and limit sets."""

from schottkit.schottky.configurations import (
    classical_configuration,
    pairing_map,
    tangent_configuration,
)
from schottkit.schottky.engine import (
    SchottkyEngine,
    build_schottky,
    detect_parabolic_cusp,
    exhaustion_stats,
    limit_set,
)
from schottkit.schottky.models import (
    ContractionFailure,
    DegenerateGroupError,
    DepthLimitError,
    DiskTree,
    ExhaustionLevel,
    ExhaustionStats,
    GroupWord,
    InvalidPairingError,
    OverlapError,
    SchottkyData,
    SchottkyDiagnostics,
    SchottkyError,
    TreeLevel,
    Validity,
)
from schottkit.schottky.words import (
    apply_word,
    boundary_curve_count,
    copy_count,
    enumerate_words,
    random_reduced_word,
    word_count,
    word_matrix,
)

__all__ = [
    "ContractionFailure",
    "DegenerateGroupError",
    "DepthLimitError",
    "DiskTree",
    "ExhaustionLevel",
    "ExhaustionStats",
    "GroupWord",
    "InvalidPairingError",
    "OverlapError",
    "SchottkyData",
    "SchottkyDiagnostics",
    "SchottkyEngine",
    "SchottkyError",
    "TreeLevel",
    "Validity",
    "apply_word",
    "boundary_curve_count",
    "build_schottky",
    "classical_configuration",
    "copy_count",
    "detect_parabolic_cusp",
    "enumerate_words",
    "exhaustion_stats",
    "limit_set",
    "pairing_map",
    "random_reduced_word",
    "tangent_configuration",
    "word_count",
    "word_matrix",
]
