"""Pairs of pants, glued surfaces and length-spectrum obstructions."""

from schottkit.pants.hyperbolic import (
    Length,
    LengthInterval,
    PantsError,
    PantsSpec,
    collar_width,
    crossing_bound,
    hexagon_cosh,
    hexagon_distance,
    hexagon_log_cosh,
    wolpert_interval,
)
from schottkit.pants.spectra import (
    EmptyTargetError,
    GenusMismatch,
    LengthSpectrum,
    ObstructionReport,
    PrecisionLimitError,
    SpectrumCurve,
    TargetEntry,
    factorial_spectra,
    factorial_lengths,
    spectrum_obstruction,
)
from schottkit.pants.surfaces import (
    GluedSurface,
    Gluing,
    GluingError,
    XInfinity,
    build_xinfty,
    factorial_surface,
    slot_label,
)

__all__ = [
    "EmptyTargetError",
    "GenusMismatch",
    "GluedSurface",
    "Gluing",
    "GluingError",
    "Length",
    "LengthInterval",
    "LengthSpectrum",
    "ObstructionReport",
    "PantsError",
    "PantsSpec",
    "PrecisionLimitError",
    "SpectrumCurve",
    "TargetEntry",
    "XInfinity",
    "build_xinfty",
    "collar_width",
    "crossing_bound",
    "factorial_spectra",
    "factorial_lengths",
    "factorial_surface",
    "hexagon_cosh",
    "hexagon_distance",
    "hexagon_log_cosh",
    "slot_label",
    "spectrum_obstruction",
    "wolpert_interval",
]
