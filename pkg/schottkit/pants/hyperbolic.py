"""Hyperbolic pairs of pants: boundary lengths, hexagon distances and collars.

Lengths are exact ``Fraction`` values when they come from the rational
families and floats otherwise. Distances and collar widths are transcendental
and are always returned as floats.
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Union

import numpy as np

from schottkit.errors import ToolkitError
from schottkit.utils.rational import format_fraction

logger = logging.getLogger(__name__)

Length = Union[Fraction, float]

SLOTS = (1, 2, 3)

LOG2 = math.log(2.0)


class PantsError(ToolkitError):
    """Base exception for pants constructions."""

    pass


def _check_length(value: Length, name: str) -> None:
    if isinstance(value, float) and not math.isfinite(value):
        raise ValueError(f"{name} must be finite, got {value}")
    if value <= 0:
        raise ValueError(f"{name} must be positive, got {value}")


def length_to_json(value: Length) -> str | float:
    if isinstance(value, Fraction):
        return format_fraction(value)
    return float(value)


@dataclass(frozen=True)
class PantsSpec:
    """Pair of pants given by its three boundary geodesic lengths (slots 1..3)."""

    lengths: tuple[Length, Length, Length]

    def __post_init__(self) -> None:
        if len(self.lengths) != 3:
            raise ValueError(f"A pair of pants has three boundary lengths, got {len(self.lengths)}")
        for slot, value in zip(SLOTS, self.lengths, strict=True):
            _check_length(value, f"length of slot {slot}")

    @classmethod
    def of(cls, l1: Length, l2: Length, l3: Length) -> "PantsSpec":
        return cls((l1, l2, l3))

    def length(self, slot: int) -> Length:
        check_slot(slot)
        return self.lengths[slot - 1]

    def is_bounded(self, M: float | Fraction) -> bool:
        """True when every boundary length lies in [1/M, M]."""
        if M < 1:
            raise ValueError(f"M must be >= 1, got {M}")
        low = 1 / M if isinstance(M, float) else Fraction(1) / M
        return all(low <= value <= M for value in self.lengths)

    def to_json(self) -> dict[str, Any]:
        return {"lengths": [length_to_json(v) for v in self.lengths]}


def check_slot(slot: int) -> None:
    if slot not in SLOTS:
        raise ValueError(f"Boundary slot must be 1, 2 or 3, got {slot}")


def _log_length(value: Length) -> float:
    """log ℓ, taken on numerator and denominator so tiny exact lengths stay finite."""
    if isinstance(value, Fraction):
        return math.log(value.numerator) - math.log(value.denominator)
    return math.log(value)


def _half(value: Length) -> float:
    try:
        return float(value) / 2
    except OverflowError as e:
        raise PantsError(f"Length {length_to_json(value)} exceeds double precision") from e


def log_cosh_half(value: Length) -> float:
    """log cosh(ℓ/2), finite for every representable length."""
    h = _half(value)
    return h + math.log1p(math.exp(-2 * h)) - LOG2


def log_sinh_half(value: Length) -> float:
    """log sinh(ℓ/2); below ℓ = 2 it goes through log ℓ so underflow is harmless."""
    h = _half(value)
    if h > 1.0:
        return h + math.log1p(-math.exp(-2 * h)) - LOG2
    ratio = math.sinh(h) / h if h > 1e-8 else 1.0
    return _log_length(value) - LOG2 + math.log(ratio)


def _acosh_from_log(log_y: float) -> float:
    # acosh(y) = log y + log(1 + sqrt(1 - y^-2)) for y = e^log_y >= 1
    log_y = max(log_y, 0.0)
    return log_y + math.log1p(math.sqrt(-math.expm1(-2 * log_y)))


def hexagon_log_cosh(spec: PantsSpec, i: int, j: int) -> float:
    """log cosh of the distance between boundary geodesics i and j.

    The common perpendicular is a side of the right-angled hexagon with
    alternate sides ℓ_1/2, ℓ_2/2, ℓ_3/2. Working with logs keeps very long
    and very short boundaries in range.
    """
    check_slot(i)
    check_slot(j)
    if i == j:
        raise ValueError(f"Slots must differ, got {i} twice")
    k = 6 - i - j
    li, lj, lk = spec.length(i), spec.length(j), spec.length(k)
    numerator = float(np.logaddexp(log_cosh_half(lk), log_cosh_half(li) + log_cosh_half(lj)))
    return numerator - (log_sinh_half(li) + log_sinh_half(lj))


def hexagon_cosh(spec: PantsSpec, i: int, j: int) -> float:
    """cosh of the distance between boundary geodesics i and j.

    Raises:
        PantsError: If the value overflows a double; use ``hexagon_distance``
    """
    log_value = hexagon_log_cosh(spec, i, j)
    try:
        return math.exp(log_value)
    except OverflowError as e:
        raise PantsError(f"cosh of the ({i}, {j}) distance overflows (log = {log_value:.6g})") from e


def hexagon_distance(spec: PantsSpec, i: int, j: int) -> float:
    """Length of the common perpendicular between boundary geodesics i and j.

    Args:
        spec: Pants boundary lengths
        i: First slot (1..3)
        j: Second slot, different from ``i``

    Returns:
        Positive hyperbolic distance

    Raises:
        ValueError: If a slot is invalid or ``i == j``
        PantsError: If a length or the distance is beyond double precision
    """
    distance = _acosh_from_log(hexagon_log_cosh(spec, i, j))
    if not math.isfinite(distance):
        raise PantsError(f"Distance between slots {i} and {j} of {spec.to_json()} overflows")
    return distance


def collar_width(length: Length) -> float:
    """Half-width arcsinh(1/sinh(ℓ/2)) of the standard collar around a geodesic.

    Short geodesics use arcsinh(y) = log 2y for large y, which is log(4/ℓ)
    to leading order.
    """
    _check_length(length, "geodesic length")
    log_inverse = -log_sinh_half(length)
    if log_inverse > 20:
        return log_inverse + LOG2 + math.log1p(math.exp(-2 * log_inverse) / 4)
    return math.asinh(math.exp(log_inverse))


def crossing_bound(length: Length) -> float:
    """Lower bound 2w(ℓ) on the length of any closed geodesic crossing the core."""
    return 2.0 * collar_width(length)


@dataclass(frozen=True)
class LengthInterval:
    """Admissible lengths (low, high); ``closed`` only in the conformal case."""

    low: Length
    high: Length
    closed: bool = False

    def contains(self, value: Length) -> bool:
        if self.closed:
            return self.low <= value <= self.high
        return self.low < value < self.high

    def within(self, other: "LengthInterval") -> bool:
        """True when this interval is a subset of ``other``."""
        if self.closed:
            return other.contains(self.low) and other.contains(self.high)
        return other.low <= self.low and self.high <= other.high

    def to_json(self) -> dict[str, Any]:
        return {
            "low": length_to_json(self.low),
            "high": length_to_json(self.high),
            "closed": self.closed,
        }


def wolpert_interval(a: Length, K: int | float | Fraction) -> LengthInterval:
    """Lengths a K-quasiconformal map may give to a geodesic of length ``a``.

    Exact when ``a`` and ``K`` are exact. K = 1 gives the closed point {a}.

    Raises:
        ValueError: If a <= 0 or K < 1
    """
    _check_length(a, "length")
    if K < 1:
        raise ValueError(f"K must be >= 1, got {K}")
    if isinstance(a, Fraction) and not isinstance(K, float):
        K = Fraction(K)
    if K == 1:
        return LengthInterval(a, a, closed=True)
    return LengthInterval(a / K, a * K)


__all__ = [
    "SLOTS",
    "Length",
    "LengthInterval",
    "PantsError",
    "PantsSpec",
    "check_slot",
    "collar_width",
    "crossing_bound",
    "hexagon_cosh",
    "hexagon_distance",
    "hexagon_log_cosh",
    "length_to_json",
    "log_cosh_half",
    "log_sinh_half",
    "wolpert_interval",
]
