"""Exact middle-third Cantor intervals I_k^i of [-1, 1].

Level k holds 2^k closed intervals of length 2·3^(-k). Positive indices
i = 1..2^(k-1) count outward from 0 on the right half; I_k^(-i) = -I_k^i.
The children of I_k^i are I_(k+1)^(ε(i)(2|i|-1)) (nearer 0) and I_(k+1)^(2i).
"""

import logging
from dataclasses import dataclass
from fractions import Fraction

from schottkit.errors import ToolkitError
from schottkit.utils.rational import format_fraction, sign

logger = logging.getLogger(__name__)

MAX_LEVEL = 40
DEFAULT_MATERIALIZE_BUDGET = 2_000_000


class CantorError(ToolkitError):
    """Base exception for Cantor constructions."""

    pass


class LevelLimitError(CantorError):
    """Raised when a level is outside the supported range."""

    def __init__(self, level: int, reason: str) -> None:
        super().__init__(f"Level {level} not supported: {reason}")
        self.level = level


def check_level(k: int, minimum: int = 1, maximum: int = MAX_LEVEL) -> None:
    if k < minimum:
        raise LevelLimitError(k, f"must be >= {minimum}")
    if k > maximum:
        raise LevelLimitError(k, f"exceeds the exact-arithmetic bound {maximum}")


def check_index(k: int, i: int) -> None:
    if i == 0 or abs(i) > 2 ** (k - 1):
        raise ValueError(f"Index {i} out of range ±1..±{2 ** (k - 1)} at level {k}")


@dataclass(frozen=True, order=True)
class TriadicInterval:
    """Closed interval [left, right] with exact endpoints (denominator 3^k)."""

    left: Fraction
    right: Fraction
    level: int
    index: int

    @property
    def length(self) -> Fraction:
        return self.right - self.left

    @property
    def midpoint(self) -> Fraction:
        return (self.left + self.right) / 2

    def children(self) -> tuple["TriadicInterval", "TriadicInterval"]:
        """(inner, outer) children after removing the open middle third."""
        third = self.length / 3
        k, i = self.level + 1, self.index
        near = sign(i) * (2 * abs(i) - 1)
        far = 2 * i
        left_part = (self.left, self.left + third)
        right_part = (self.right - third, self.right)
        if i > 0:
            return (
                TriadicInterval(*left_part, k, near),
                TriadicInterval(*right_part, k, far),
            )
        return (
            TriadicInterval(*right_part, k, near),
            TriadicInterval(*left_part, k, far),
        )

    def to_json(self) -> dict[str, object]:
        return {
            "level": self.level,
            "index": self.index,
            "left": format_fraction(self.left),
            "right": format_fraction(self.right),
        }


def parent_index(i: int) -> int:
    """Index of the level-(k-1) interval containing I_k^i."""
    return sign(i) * ((abs(i) + 1) // 2)


def interval(k: int, i: int) -> TriadicInterval:
    """Closed form for I_k^i.

    Bits of |i| - 1 (most significant first) choose the outer child at each
    refinement; choosing it shifts the left endpoint by 4/3^(m+1).

    Raises:
        LevelLimitError: If k is outside 1..40
        ValueError: If i is out of range
    """
    check_level(k)
    check_index(k, i)
    offset = abs(i) - 1
    left = Fraction(1, 3)
    for m in range(1, k):
        bit = (offset >> (k - 1 - m)) & 1
        if bit:
            left += Fraction(4, 3 ** (m + 1))
    right = left + Fraction(2, 3**k)
    if i < 0:
        left, right = -right, -left
    return TriadicInterval(left, right, k, i)


def level_indices(k: int) -> list[int]:
    """Indices -2^(k-1)..-1, 1..2^(k-1)."""
    half = 2 ** (k - 1)
    return [i for i in range(-half, half + 1) if i != 0]


def cantor_intervals(k: int, budget: int = DEFAULT_MATERIALIZE_BUDGET) -> list[TriadicInterval]:
    """All 2^k intervals of level ``k``, sorted left to right.

    The default budget stops at k = 20. Deeper levels up to 40 are reached
    one interval at a time through :func:`interval`, or by raising
    ``cantor.materialize_budget``.

    Raises:
        LevelLimitError: If k is out of range or 2^k exceeds ``budget``
    """
    check_level(k)
    if 2**k > budget:
        raise LevelLimitError(
            k,
            f"2^{k} intervals exceed the materialization budget {budget} "
            f"(cantor.materialize_budget); use interval(k, i) for single intervals",
        )
    result = sorted(interval(k, i) for i in level_indices(k))
    logger.debug(f"Built {len(result)} Cantor intervals at level {k}")
    return result
