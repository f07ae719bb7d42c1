"""Length spectra of the factorial surfaces and the length-distortion obstruction.

Both surfaces are chains of genus-one pieces T_n (two pants with boundary
lengths 1, 1, a_n glued along their unit curves) capped by the genus-one
surface S. The first chain starts at T_0, the second at T_1, so the same
curve α_N bounds genus N+1 in the first surface and genus N in the second.
"""

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

import pandas as pd

from schottkit.pants.hyperbolic import (
    Length,
    LengthInterval,
    PantsError,
    crossing_bound,
    length_to_json,
    wolpert_interval,
)
from schottkit.utils.rational import factorial_fraction

logger = logging.getLogger(__name__)

FLOAT_FACTORIAL_LIMIT = 170

ALPHA = "alpha"
GLUING = "gluing"

ASSUMED_LINK = (
    "A geodesic that stays disjoint from every alpha_i is assumed to be longer than a_N "
    "for large N; only the crossing case is bounded here, by twice the collar half-width."
)


class PrecisionLimitError(PantsError):
    """Raised when a float spectrum would overflow double precision."""

    def __init__(self, n_max: int, limit: int) -> None:
        super().__init__(
            f"1/{n_max}! is not representable as a float (limit {limit}); use exact mode"
        )
        self.n_max = n_max
        self.limit = limit


class EmptyTargetError(PantsError):
    """Raised when a curve has no admissible image; carries the report."""

    def __init__(self, report: "ObstructionReport", indices: list[int]) -> None:
        super().__init__(f"No admissible target for alpha_N, N in {indices}, at K={report.K}")
        self.report = report
        self.indices = indices


@dataclass(frozen=True)
class SpectrumCurve:
    label: str
    kind: str
    length: Length
    index: int | None = None


@dataclass
class LengthSpectrum:
    """Labeled simple closed geodesics of a truncated surface.

    ``genus_inside[N]`` is the genus of the compact piece bounded by alpha_N.
    """

    name: str
    curves: list[SpectrumCurve]
    genus_inside: dict[int, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        for curve in self.curves:
            if curve.length <= 0:
                raise ValueError(f"Curve {curve.label} has non-positive length {curve.length}")
        labels = [c.label for c in self.curves]
        if len(set(labels)) != len(labels):
            raise ValueError(f"Duplicate curve labels in spectrum {self.name}")

    @property
    def exact(self) -> bool:
        return all(isinstance(c.length, Fraction) for c in self.curves)

    def distinguished(self) -> dict[int, Length]:
        """alpha_N lengths keyed by N."""
        return {c.index: c.length for c in self.curves if c.kind == ALPHA and c.index is not None}

    def gluing_curves(self) -> list[SpectrumCurve]:
        return [c for c in self.curves if c.kind == GLUING]

    def length(self, label: str) -> Length:
        for curve in self.curves:
            if curve.label == label:
                return curve.length
        raise KeyError(label)

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(
            [
                {
                    "label": c.label,
                    "kind": c.kind,
                    "index": c.index,
                    "length": length_to_json(c.length),
                    "length_float": float(c.length),
                    "genus_inside": self.genus_inside.get(c.index) if c.kind == ALPHA else None,
                }
                for c in self.curves
            ]
        )

    def to_json(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "exact": self.exact,
            "curves": [
                {
                    "label": c.label,
                    "kind": c.kind,
                    "index": c.index,
                    "length": length_to_json(c.length),
                }
                for c in self.curves
            ],
            "genus_inside": {str(n): g for n, g in sorted(self.genus_inside.items())},
        }


def factorial_lengths(n_max: int, exact: bool = True, float_limit: int = FLOAT_FACTORIAL_LIMIT) -> list[Length]:
    """a_n = 1/n! for n = 0..n_max.

    Raises:
        PrecisionLimitError: If floats are requested beyond ``float_limit``
    """
    if n_max < 0:
        raise ValueError(f"n_max must be non-negative, got {n_max}")
    if exact:
        return [factorial_fraction(n) for n in range(n_max + 1)]
    if n_max > float_limit:
        raise PrecisionLimitError(n_max, float_limit)
    return [1.0 / math.factorial(n) for n in range(n_max + 1)]


def _chain_spectrum(name: str, start: int, lengths: list[Length]) -> LengthSpectrum:
    n_max = len(lengths) - 1
    one: Length = Fraction(1) if isinstance(lengths[0], Fraction) else 1.0
    curves = [SpectrumCurve("sigma", GLUING, one)]
    for n in range(start, n_max + 1):
        curves.append(SpectrumCurve(f"alpha_{n}", ALPHA, lengths[n], n))
        if n < n_max:
            curves.append(SpectrumCurve(f"beta_{n}_1", GLUING, one))
            curves.append(SpectrumCurve(f"beta_{n}_2", GLUING, one))
    # S contributes genus one; each T_n between alpha_start and alpha_N adds one more.
    genus = {n: 1 + n - start for n in range(start, n_max + 1)}
    return LengthSpectrum(name, curves, genus)


def factorial_spectra(
    n_max: int,
    exact: bool = True,
    float_limit: int = FLOAT_FACTORIAL_LIMIT,
) -> tuple[LengthSpectrum, LengthSpectrum]:
    """Spectra of the chains started at T_0 and at T_1, truncated at alpha_(n_max).

    Args:
        n_max: Last distinguished curve index (>= 1)
        exact: Use Fractions (any n_max) or floats (n_max <= float_limit)
        float_limit: Largest factorial accepted in float mode

    Returns:
        (first, second) spectra; alpha_N bounds genus N+1 in the first and N in the second

    Raises:
        PrecisionLimitError: If float mode is asked for n_max > float_limit
    """
    if n_max < 1:
        raise ValueError(f"n_max must be >= 1, got {n_max}")
    lengths = factorial_lengths(n_max, exact, float_limit)
    first = _chain_spectrum("R1", 0, lengths)
    second = _chain_spectrum("R2", 1, lengths)
    logger.info(f"Built factorial spectra up to alpha_{n_max} ({'exact' if exact else 'float'})")
    return first, second


@dataclass
class TargetEntry:
    """Admissible images of one distinguished curve of the source surface."""

    index: int
    length: Length
    interval: LengthInterval
    targets: list[int]
    gluing_hits: list[str]
    crossing_bound: float
    crossing_excluded: bool

    @property
    def forced(self) -> bool:
        return len(self.targets) == 1 and not self.gluing_hits

    @property
    def empty(self) -> bool:
        return not self.targets and not self.gluing_hits

    def to_json(self) -> dict[str, Any]:
        return {
            "index": self.index,
            "length": length_to_json(self.length),
            "interval": self.interval.to_json(),
            "targets": list(self.targets),
            "gluing_hits": list(self.gluing_hits),
            "forced": self.forced,
            "crossing_bound": self.crossing_bound,
            "crossing_excluded": self.crossing_excluded,
        }


@dataclass(frozen=True)
class GenusMismatch:
    """alpha_N forced onto a curve that bounds a different genus."""

    index: int
    target: int
    genus_source: int
    genus_target: int

    def describe(self, source: str, target: str) -> str:
        return (
            f"alpha_{self.index} bounds genus {self.genus_source} in {source} but its only "
            f"admissible image alpha_{self.target} bounds genus {self.genus_target} in {target}"
        )

    def to_json(self) -> dict[str, int]:
        return {
            "index": self.index,
            "target": self.target,
            "genus_source": self.genus_source,
            "genus_target": self.genus_target,
        }


@dataclass
class ObstructionReport:
    """Every link of the length-distortion argument, checkable on its own."""

    source: str
    target: str
    K: int | float | Fraction
    entries: list[TargetEntry]
    mismatches: list[GenusMismatch]
    assumed_link: str = ASSUMED_LINK

    @property
    def forced_indices(self) -> list[int]:
        return [e.index for e in self.entries if e.forced]

    @property
    def identity_matching(self) -> bool:
        return all(e.index in e.targets for e in self.entries)

    @property
    def obstructed(self) -> bool:
        return bool(self.mismatches) or any(e.empty for e in self.entries)

    def entry(self, index: int) -> TargetEntry:
        for e in self.entries:
            if e.index == index:
                return e
        raise KeyError(index)

    def to_json(self) -> dict[str, Any]:
        return {
            "source": self.source,
            "target": self.target,
            "K": length_to_json(self.K) if not isinstance(self.K, int) else self.K,
            "entries": [e.to_json() for e in self.entries],
            "forced": self.forced_indices,
            "identity_matching": self.identity_matching,
            "mismatches": [m.to_json() for m in self.mismatches],
            "certificates": [m.describe(self.source, self.target) for m in self.mismatches],
            "obstructed": self.obstructed,
            "assumed_link": self.assumed_link,
        }


def spectrum_obstruction(
    s1: LengthSpectrum,
    s2: LengthSpectrum,
    K: int | float | Fraction,
    raise_on_empty: bool = True,
) -> ObstructionReport:
    """Scan admissible images of each alpha_N of ``s1`` among the curves of ``s2``.

    Intervals are open, (a/K, K·a), except the closed point for K = 1. A
    forced target whose enclosed genus differs from the source's is recorded
    as a genus mismatch.

    Raises:
        ValueError: If K < 1
        EmptyTargetError: If some curve has no admissible image and ``raise_on_empty``
    """
    if K < 1:
        raise ValueError(f"K must be >= 1, got {K}")

    targets_by_index = s2.distinguished()
    gluing = s2.gluing_curves()
    # The collar narrows as the core grows, so the longest curve gives the smallest bound.
    bound = crossing_bound(max(c.length for c in s2.curves))

    entries: list[TargetEntry] = []
    mismatches: list[GenusMismatch] = []
    for n, a in sorted(s1.distinguished().items()):
        window = wolpert_interval(a, K)
        targets = sorted(m for m, b in targets_by_index.items() if window.contains(b))
        hits = [c.label for c in gluing if window.contains(c.length)]
        entry = TargetEntry(
            index=n,
            length=a,
            interval=window,
            targets=targets,
            gluing_hits=hits,
            crossing_bound=bound,
            crossing_excluded=float(window.high) < bound,
        )
        entries.append(entry)

        if entry.forced and n in s1.genus_inside and targets[0] in s2.genus_inside:
            g1, g2 = s1.genus_inside[n], s2.genus_inside[targets[0]]
            if g1 != g2:
                mismatches.append(GenusMismatch(n, targets[0], g1, g2))

    report = ObstructionReport(s1.name, s2.name, K, entries, mismatches)
    logger.info(
        f"Obstruction scan {s1.name} -> {s2.name} at K={K}: "
        f"{len(report.forced_indices)} forced, {len(mismatches)} genus mismatches"
    )

    empty = [e.index for e in entries if e.empty]
    if empty and raise_on_empty:
        raise EmptyTargetError(report, empty)
    return report


__all__ = [
    "ALPHA",
    "ASSUMED_LINK",
    "FLOAT_FACTORIAL_LIMIT",
    "GLUING",
    "EmptyTargetError",
    "GenusMismatch",
    "LengthSpectrum",
    "ObstructionReport",
    "PrecisionLimitError",
    "SpectrumCurve",
    "TargetEntry",
    "factorial_spectra",
    "factorial_lengths",
    "spectrum_obstruction",
]
