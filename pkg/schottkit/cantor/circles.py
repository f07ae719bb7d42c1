"""Circles C_k^i around the Cantor intervals and their exact certificates.

C_k^i is centered at the midpoint of I_k^i with radius (5/6)|I_k^i|; C_0^0
is the imaginary axis. Every circle is centered on the real axis, so two of
them are disjoint exactly when their real diameters are strictly nested or
strictly separated. The certificate is a single sweep over those diameters.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from schottkit.cantor.intervals import (
    DEFAULT_MATERIALIZE_BUDGET,
    LevelLimitError,
    check_level,
    interval,
    level_indices,
    parent_index,
)
from schottkit.utils.rational import format_fraction

logger = logging.getLogger(__name__)

RADIUS_RATIO = Fraction(5, 6)


@dataclass(frozen=True)
class CantorCircle:
    """C_k^i. ``center`` and ``radius`` are None only for the axis C_0^0."""

    level: int
    index: int
    center: Fraction | None = None
    radius: Fraction | None = None

    @property
    def is_axis(self) -> bool:
        return self.level == 0

    @property
    def label(self) -> str:
        return f"C_{self.level}^{self.index}"

    @property
    def key(self) -> tuple[int, int]:
        return (self.level, self.index)

    @property
    def left(self) -> Fraction:
        assert self.center is not None and self.radius is not None
        return self.center - self.radius

    @property
    def right(self) -> Fraction:
        assert self.center is not None and self.radius is not None
        return self.center + self.radius

    def to_json(self) -> dict[str, object]:
        if self.is_axis:
            return {"level": 0, "index": 0, "line": "imaginary_axis"}
        assert self.center is not None and self.radius is not None
        return {
            "level": self.level,
            "index": self.index,
            "center": format_fraction(self.center),
            "radius": format_fraction(self.radius),
        }


AXIS = CantorCircle(0, 0)


def cantor_circle(k: int, i: int) -> CantorCircle:
    """C_k^i for k >= 1 (exact)."""
    iv = interval(k, i)
    return CantorCircle(k, i, iv.midpoint, RADIUS_RATIO * iv.length)


def gap(c1: CantorCircle, c2: CantorCircle) -> Fraction:
    """Exact separation of two circles; negative when they cross or touch.

    Nested circles: r_out - r_in - |c_out - c_in|. Separate circles:
    |c1 - c2| - r1 - r2. The axis is at distance |c| - r from a circle.
    """
    if c1.is_axis and c2.is_axis:
        return Fraction(0)
    if c1.is_axis or c2.is_axis:
        other = c2 if c1.is_axis else c1
        assert other.center is not None and other.radius is not None
        return abs(other.center) - other.radius
    assert c1.center is not None and c1.radius is not None
    assert c2.center is not None and c2.radius is not None
    dist = abs(c1.center - c2.center)
    outside = dist - c1.radius - c2.radius
    if outside > 0:
        return outside
    big, small = (c1, c2) if c1.radius >= c2.radius else (c2, c1)
    assert big.radius is not None and small.radius is not None
    return big.radius - small.radius - dist


@dataclass
class DisjointnessCertificate:
    """Outcome of the exact sweep.

    ``parents`` maps each circle key to its immediately enclosing circle key
    (``None`` for outermost circles).
    """

    k_max: int
    circle_count: int
    min_gap: Fraction | None
    min_gap_pair: tuple[str, str] | None
    axis_gap: Fraction | None
    disjoint: bool
    containment_ok: bool
    violations: list[str] = field(default_factory=list)
    parents: dict[tuple[int, int], tuple[int, int] | None] = field(default_factory=dict)

    @property
    def valid(self) -> bool:
        return self.disjoint and self.containment_ok

    def to_json(self) -> dict[str, object]:
        return {
            "k_max": self.k_max,
            "circle_count": self.circle_count,
            "min_gap": None if self.min_gap is None else format_fraction(self.min_gap),
            "min_gap_pair": None if self.min_gap_pair is None else list(self.min_gap_pair),
            "axis_gap": None if self.axis_gap is None else format_fraction(self.axis_gap),
            "disjoint": self.disjoint,
            "containment_ok": self.containment_ok,
            "violations": list(self.violations),
        }


@dataclass
class CircleFamily:
    """C_0^0 plus C_k^i for 1 <= k <= k_max, with its certificate."""

    k_max: int
    circles: list[CantorCircle]
    certificate: DisjointnessCertificate

    def by_key(self) -> dict[tuple[int, int], CantorCircle]:
        return {c.key: c for c in self.circles}


def _sweep(circles: list[CantorCircle], k_max: int) -> DisjointnessCertificate:
    """Laminar sweep over real diameters sorted by (left asc, right desc)."""
    cert = DisjointnessCertificate(
        k_max=k_max,
        circle_count=len(circles) + 1,
        min_gap=None,
        min_gap_pair=None,
        axis_gap=None,
        disjoint=True,
        containment_ok=True,
    )

    def _record(value: Fraction, a: CantorCircle, b: CantorCircle) -> None:
        if cert.min_gap is None or value < cert.min_gap:
            cert.min_gap = value
            cert.min_gap_pair = (a.label, b.label)
        if value <= 0:
            cert.disjoint = False
            cert.violations.append(f"{a.label} and {b.label} are not disjoint (gap {value})")

    for c in circles:
        axis = gap(AXIS, c)
        if cert.axis_gap is None or axis < cert.axis_gap:
            cert.axis_gap = axis
        _record(axis, AXIS, c)

    ordered = sorted(circles, key=lambda c: (c.left, -c.right))
    stack: list[CantorCircle] = []
    closed_right: CantorCircle | None = None

    for c in ordered:
        while stack and stack[-1].right < c.left:
            done = stack.pop()
            if closed_right is None or done.right > closed_right.right:
                closed_right = done
        if closed_right is not None:
            # Nearest circle entirely to the left; every other one is farther.
            _record(c.left - closed_right.right, closed_right, c)
        if stack:
            top = stack[-1]
            _record(min(c.left - top.left, top.right - c.right), top, c)
            cert.parents[c.key] = top.key
        else:
            cert.parents[c.key] = None
        stack.append(c)

    return cert


def _check_containment(cert: DisjointnessCertificate, k_max: int) -> None:
    """Each C_k^i must enclose exactly C_(k+1)^(ε(i)(2|i|-1)) and C_(k+1)^(2i)."""
    for (k, i), parent in cert.parents.items():
        expected = None if k == 1 else (k - 1, parent_index(i))
        if parent != expected:
            cert.containment_ok = False
            cert.violations.append(
                f"C_{k}^{i} is enclosed by {parent} instead of {expected}"
            )


def cantor_circles(
    k_max: int,
    budget: int = DEFAULT_MATERIALIZE_BUDGET,
) -> CircleFamily:
    """Build and certify C_0^0 and all C_k^i up to ``k_max``.

    The default budget admits k_max <= 19; single circles at any level up
    to 40 come from :func:`cantor_circle`.

    Raises:
        LevelLimitError: If k_max is outside 1..40 or the family is too large
    """
    check_level(k_max)
    total = 2 * (2**k_max - 1)
    if total > budget:
        raise LevelLimitError(
            k_max,
            f"{total} circles exceed the materialization budget {budget} "
            f"(cantor.materialize_budget); use cantor_circle(k, i) for single circles",
        )

    circles = [cantor_circle(k, i) for k in range(1, k_max + 1) for i in level_indices(k)]
    cert = _sweep(circles, k_max)
    _check_containment(cert, k_max)

    logger.info(
        f"Certified {cert.circle_count} circles up to level {k_max}: "
        f"min gap {cert.min_gap}, {'valid' if cert.valid else 'INVALID'}"
    )
    if not cert.valid:
        logger.warning(f"Certificate failed with {len(cert.violations)} violations")
    return CircleFamily(k_max=k_max, circles=[AXIS, *circles], certificate=cert)


def brute_force_min_gap(k_max: int) -> tuple[Fraction, tuple[str, str]]:
    """All-pairs minimum gap, including the axis. Quadratic; for small k_max."""
    check_level(k_max, maximum=10)
    circles = [AXIS] + [cantor_circle(k, i) for k in range(1, k_max + 1) for i in level_indices(k)]
    best: tuple[Fraction, tuple[str, str]] | None = None
    for a, b in combinations(circles, 2):
        value = gap(a, b)
        if best is None or value < best[0]:
            best = (value, (a.label, b.label))
    assert best is not None
    return best


def level_one_image(k: int, i: int) -> tuple[CantorCircle, CantorCircle]:
    """Images of C_1^(-1) and C_1^(1) under the affine map [-1, 1] -> I_k^i.

    x ↦ m + (|I|/2)x with m the midpoint. Returned as circles labeled by the
    children they should coincide with (inner child first).
    """
    iv = interval(k, i)
    half = iv.length / 2
    base_neg, base_pos = cantor_circle(1, -1), cantor_circle(1, 1)
    assert base_neg.center is not None and base_neg.radius is not None
    assert base_pos.center is not None and base_pos.radius is not None

    def _image(c: CantorCircle, label: int) -> CantorCircle:
        assert c.center is not None and c.radius is not None
        return CantorCircle(k + 1, label, iv.midpoint + half * c.center, half * c.radius)

    near = (1 if i > 0 else -1) * (2 * abs(i) - 1)
    if i > 0:
        return _image(base_neg, near), _image(base_pos, 2 * i)
    return _image(base_pos, near), _image(base_neg, 2 * i)


def self_similarity_holds(k_max: int) -> bool:
    """Exact check that each level-(k+1) pair is the scaled level-1 pair."""
    check_level(k_max)
    for k in range(1, k_max):
        for i in level_indices(k):
            inner, outer = level_one_image(k, i)
            if inner != cantor_circle(k + 1, inner.index) or outer != cantor_circle(k + 1, outer.index):
                return False
    return True


__all__ = [
    "AXIS",
    "CantorCircle",
    "CircleFamily",
    "DisjointnessCertificate",
    "LevelLimitError",
    "brute_force_min_gap",
    "cantor_circle",
    "cantor_circles",
    "gap",
    "level_one_image",
    "self_similarity_holds",
]
