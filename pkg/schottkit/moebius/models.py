"""Möbius transformations, circles and points of the Riemann sphere.

All values are immutable after construction. Matrices are kept in SL(2, C)
(determinant one) with a canonical sign, so two maps acting identically
compare equal entrywise up to round-off.
"""

import cmath
import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Any

import numpy as np
import numpy.typing as npt

from schottkit.errors import ToolkitError

logger = logging.getLogger(__name__)

DET_TOL = 1e-14
PARABOLIC_TOL = 1e-9
_ZERO = 1e-12
_COLLINEAR_TOL = 1e-12


class MoebiusError(ToolkitError):
    """Base exception for Möbius algebra."""

    pass


class DegenerateMatrix(MoebiusError):
    """Raised when a matrix is (numerically) singular."""

    def __init__(self, det: complex) -> None:
        super().__init__(f"Matrix determinant {abs(det):.3e} below {DET_TOL:.0e}")
        self.det = det


@dataclass(frozen=True)
class SpherePoint:
    """A point of the Riemann sphere: either finite or the point at infinity."""

    value: complex | None = None

    def __post_init__(self) -> None:
        if self.value is not None:
            z = complex(self.value)
            if not (math.isfinite(z.real) and math.isfinite(z.imag)):
                raise ValueError(f"Finite sphere point has non-finite coordinates: {z}")
            object.__setattr__(self, "value", z)

    @classmethod
    def finite(cls, z: complex) -> "SpherePoint":
        return cls(complex(z))

    @classmethod
    def infinity(cls) -> "SpherePoint":
        return cls(None)

    @property
    def is_infinity(self) -> bool:
        return self.value is None

    @property
    def z(self) -> complex:
        """The finite coordinate.

        Raises:
            ValueError: If the point is at infinity
        """
        if self.value is None:
            raise ValueError("Point at infinity has no finite coordinate")
        return self.value

    def to_json(self) -> list[float] | str:
        if self.value is None:
            return "inf"
        return [self.value.real, self.value.imag]

    def __str__(self) -> str:
        return "∞" if self.value is None else f"{self.value:.6g}"


def chordal_distance(p: SpherePoint, q: SpherePoint) -> float:
    """Chordal distance on the unit sphere of diameter one (values in [0, 1])."""
    if p.is_infinity and q.is_infinity:
        return 0.0
    if p.is_infinity:
        return 1.0 / math.sqrt(1.0 + abs(q.z) ** 2)
    if q.is_infinity:
        return 1.0 / math.sqrt(1.0 + abs(p.z) ** 2)
    return abs(p.z - q.z) / (math.sqrt(1.0 + abs(p.z) ** 2) * math.sqrt(1.0 + abs(q.z) ** 2))


def _canonical_sign(entries: tuple[complex, complex, complex, complex]) -> int:
    """Pick the sign making the first significant entry lie in the right half-plane."""
    for x in entries:
        if abs(x) > 1e-9:
            if x.real < -1e-12 or (abs(x.real) <= 1e-12 and x.imag < 0):
                return -1
            return 1
    return 1


@dataclass(frozen=True)
class MoebiusMap:
    """z ↦ (az + b)/(cz + d), stored with ad − bc = 1 and a canonical sign.

    Construct through ``MoebiusMap(a, b, c, d)`` with any non-singular
    entries; normalization happens in ``__post_init__``.
    """

    a: complex
    b: complex
    c: complex
    d: complex

    def __post_init__(self) -> None:
        a, b, c, d = (complex(x) for x in (self.a, self.b, self.c, self.d))
        det = a * d - b * c
        if abs(det) < DET_TOL:
            raise DegenerateMatrix(det)
        s = cmath.sqrt(det)
        a, b, c, d = a / s, b / s, c / s, d / s
        if _canonical_sign((a, b, c, d)) < 0:
            a, b, c, d = -a, -b, -c, -d
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "d", d)

    @classmethod
    def identity(cls) -> "MoebiusMap":
        return cls(1, 0, 0, 1)

    @classmethod
    def from_matrix(cls, m: npt.ArrayLike) -> "MoebiusMap":
        arr = np.asarray(m, dtype=complex)
        if arr.shape != (2, 2):
            raise ValueError(f"Expected a 2x2 matrix, got shape {arr.shape}")
        return cls(arr[0, 0], arr[0, 1], arr[1, 0], arr[1, 1])

    @classmethod
    def translation(cls, t: complex) -> "MoebiusMap":
        return cls(1, t, 0, 1)

    @classmethod
    def dilation(cls, lam: complex) -> "MoebiusMap":
        return cls(lam, 0, 0, 1)

    @property
    def matrix(self) -> npt.NDArray[np.complex128]:
        return np.array([[self.a, self.b], [self.c, self.d]], dtype=complex)

    @property
    def trace(self) -> complex:
        return self.a + self.d

    @property
    def pole(self) -> SpherePoint:
        """Preimage of ∞."""
        if abs(self.c) < _ZERO:
            return SpherePoint.infinity()
        return SpherePoint.finite(-self.d / self.c)

    def __call__(self, z: complex) -> complex:
        """Apply to a finite point that is not the pole."""
        return (self.a * z + self.b) / (self.c * z + self.d)

    def __matmul__(self, other: "MoebiusMap") -> "MoebiusMap":
        return compose(self, other)

    def apply(self, p: SpherePoint) -> SpherePoint:
        """Apply to a point of the sphere, handling ∞ and the pole explicitly."""
        if p.is_infinity:
            if abs(self.c) < _ZERO:
                return SpherePoint.infinity()
            return SpherePoint.finite(self.a / self.c)
        den = self.c * p.z + self.d
        if abs(den) < _ZERO * max(1.0, abs(self.a * p.z + self.b)):
            return SpherePoint.infinity()
        return SpherePoint.finite((self.a * p.z + self.b) / den)

    def apply_array(self, z: npt.NDArray[np.complex128]) -> npt.NDArray[np.complex128]:
        """Vectorized action on finite points away from the pole."""
        return (self.a * z + self.b) / (self.c * z + self.d)

    def inverse(self) -> "MoebiusMap":
        return MoebiusMap(self.d, -self.b, -self.c, self.a)

    def conjugate_by(self, g: "MoebiusMap") -> "MoebiusMap":
        """Return g ∘ self ∘ g⁻¹."""
        return compose(compose(g, self), g.inverse())

    def equals(self, other: "MoebiusMap", tol: float = 1e-10) -> bool:
        """Projective equality in PSL(2, C): entries agree up to a global sign."""
        mine = np.array([self.a, self.b, self.c, self.d])
        theirs = np.array([other.a, other.b, other.c, other.d])
        return bool(
            np.max(np.abs(mine - theirs)) < tol or np.max(np.abs(mine + theirs)) < tol
        )

    def is_identity(self, tol: float = 1e-10) -> bool:
        return self.equals(MoebiusMap.identity(), tol)

    def to_json(self) -> dict[str, list[float]]:
        return {
            name: [complex(v).real, complex(v).imag]
            for name, v in (("a", self.a), ("b", self.b), ("c", self.c), ("d", self.d))
        }

    @classmethod
    def from_json(cls, data: dict[str, Any]) -> "MoebiusMap":
        def _c(key: str) -> complex:
            re, im = data[key]
            return complex(float(re), float(im))

        return cls(_c("a"), _c("b"), _c("c"), _c("d"))


def compose(f: MoebiusMap, g: MoebiusMap) -> MoebiusMap:
    """Return f ∘ g (apply g first), renormalized to determinant one."""
    return MoebiusMap(
        f.a * g.a + f.b * g.c,
        f.a * g.b + f.b * g.d,
        f.c * g.a + f.d * g.c,
        f.c * g.b + f.d * g.d,
    )


class MapClass(str, Enum):
    """Conjugacy type of a Möbius map."""

    LOXODROMIC = "loxodromic"
    PARABOLIC = "parabolic"
    ELLIPTIC = "elliptic"
    IDENTITY = "identity"


@dataclass(frozen=True)
class Classification:
    """Type of a map together with its fixed points."""

    kind: MapClass
    fixed_points: tuple[SpherePoint, ...]
    trace_squared: complex

    def to_json(self) -> dict[str, Any]:
        return {
            "class": self.kind.value,
            "fixed_points": [p.to_json() for p in self.fixed_points],
            "trace_squared": [self.trace_squared.real, self.trace_squared.imag],
        }


def fixed_points(f: MoebiusMap, tol: float = PARABOLIC_TOL) -> tuple[SpherePoint, ...]:
    """Fixed points of a non-identity map (one when parabolic, two otherwise)."""
    a, b, c, d = f.a, f.b, f.c, f.d
    tr2 = f.trace**2
    parabolic = abs(tr2 - 4) < tol
    if abs(c) < _ZERO:
        if parabolic or abs(a - d) < _ZERO:
            return (SpherePoint.infinity(),)
        return (SpherePoint.finite(b / (d - a)), SpherePoint.infinity())
    if parabolic:
        return (SpherePoint.finite((a - d) / (2 * c)),)
    root = cmath.sqrt(tr2 - 4)
    return (
        SpherePoint.finite(((a - d) - root) / (2 * c)),
        SpherePoint.finite(((a - d) + root) / (2 * c)),
    )


def classify(f: MoebiusMap, tol: float = PARABOLIC_TOL) -> Classification:
    """Classify ``f`` as identity, parabolic, elliptic or loxodromic.

    Args:
        f: Map to classify
        tol: Parabolic tolerance on |trace² − 4|

    Returns:
        Classification with fixed points and trace²
    """
    tr2 = f.trace**2
    if f.is_identity():
        return Classification(MapClass.IDENTITY, (), tr2)

    if abs(tr2 - 4) < tol:
        kind = MapClass.PARABOLIC
    elif abs(tr2.imag) < tol and 0 <= tr2.real < 4:
        kind = MapClass.ELLIPTIC
    else:
        kind = MapClass.LOXODROMIC

    return Classification(kind, fixed_points(f, tol), tr2)


@dataclass(frozen=True)
class Circle:
    """An oriented generalized circle.

    A proper circle has ``center`` and ``radius``; a line has ``point`` and
    unit ``direction``. ``inside`` selects the oriented disk: the bounded
    component for a circle, the half-plane to the left of ``direction`` for
    a line.
    """

    center: complex | None = None
    radius: float | None = None
    point: complex | None = None
    direction: complex | None = None
    inside: bool = True

    def __post_init__(self) -> None:
        if self.radius is not None:
            if self.center is None:
                raise ValueError("Proper circle needs a center")
            if not (self.radius > 0 and math.isfinite(self.radius)):
                raise ValueError(f"Circle radius must be positive and finite, got {self.radius}")
            object.__setattr__(self, "center", complex(self.center))
            object.__setattr__(self, "radius", float(self.radius))
        elif self.point is not None and self.direction is not None:
            u = complex(self.direction)
            if abs(u) < _ZERO:
                raise ValueError("Line direction must be non-zero")
            object.__setattr__(self, "point", complex(self.point))
            object.__setattr__(self, "direction", u / abs(u))
            object.__setattr__(self, "center", None)
        else:
            raise ValueError("Circle needs (center, radius) or (point, direction)")

    @classmethod
    def disk(cls, center: complex, radius: float, inside: bool = True) -> "Circle":
        return cls(center=center, radius=radius, inside=inside)

    @classmethod
    def line(cls, point: complex, direction: complex, inside: bool = True) -> "Circle":
        return cls(point=point, direction=direction, inside=inside)

    @property
    def is_line(self) -> bool:
        return self.radius is None

    @property
    def c(self) -> complex:
        """Center of a proper circle."""
        if self.center is None:
            raise ValueError("A line has no center")
        return self.center

    @property
    def r(self) -> float:
        """Radius of a proper circle."""
        if self.radius is None:
            raise ValueError("A line has no radius")
        return self.radius

    def flipped(self) -> "Circle":
        """Same curve, complementary disk."""
        if self.is_line:
            return Circle.line(self.point or 0j, self.direction or 1, not self.inside)
        return Circle.disk(self.c, self.r, not self.inside)

    def side(self, z: complex) -> float:
        """Signed distance: positive inside the oriented disk, negative outside."""
        if self.is_line:
            assert self.point is not None and self.direction is not None
            left = ((z - self.point) / self.direction).imag
            return left if self.inside else -left
        gap = self.r - abs(z - self.c)
        return gap if self.inside else -gap

    def contains(self, z: complex, tol: float = 0.0) -> bool:
        """Closed oriented-disk membership with slack ``tol``."""
        return self.side(z) >= -tol

    def on_curve(self, z: complex, tol: float = 1e-9) -> bool:
        return abs(self.side(z)) <= tol

    def sample_points(self, n: int = 8) -> list[complex]:
        """``n`` points spread along the curve."""
        if self.is_line:
            assert self.point is not None and self.direction is not None
            offsets = [t - (n - 1) / 2 for t in range(n)]
            return [self.point + s * self.direction for s in offsets]
        return [self.c + self.r * cmath.exp(2j * math.pi * j / n) for j in range(n)]

    def interior_points(self) -> list[complex]:
        """Candidate points strictly inside the oriented disk."""
        if self.is_line:
            assert self.point is not None and self.direction is not None
            normal = 1j * self.direction if self.inside else -1j * self.direction
            return [self.point + s * normal for s in (1.0, 2.0, 3.0)]
        if self.inside:
            return [self.c, self.c + 0.5 * self.r, self.c - 0.5j * self.r]
        return [self.c + 2 * self.r, self.c - 3 * self.r, self.c + 2.5j * self.r]

    def approx_equals(self, other: "Circle", tol: float = 1e-9) -> bool:
        if self.is_line != other.is_line or self.inside != other.inside:
            return False
        if self.is_line:
            assert self.direction is not None and other.direction is not None
            assert self.point is not None and other.point is not None
            parallel = abs((self.direction / other.direction).imag) < tol
            same_dir = (self.direction / other.direction).real > 0
            through = abs(((other.point - self.point) / self.direction).imag) < tol
            return parallel and same_dir and through
        return abs(self.c - other.c) < tol and abs(self.r - other.r) < tol

    def to_json(self) -> dict[str, Any]:
        if self.is_line:
            assert self.point is not None and self.direction is not None
            return {
                "line": {
                    "point": [self.point.real, self.point.imag],
                    "direction": [self.direction.real, self.direction.imag],
                },
                "inside": self.inside,
            }
        return {"center": [self.c.real, self.c.imag], "radius": self.r, "inside": self.inside}

    @classmethod
    def from_json(cls, data: dict[str, Any]) -> "Circle":
        inside = bool(data.get("inside", True))
        if "line" in data:
            p = data["line"]["point"]
            u = data["line"]["direction"]
            return cls.line(complex(p[0], p[1]), complex(u[0], u[1]), inside)
        c = data["center"]
        return cls.disk(complex(c[0], c[1]), float(data["radius"]), inside)


def circle_through(z1: complex, z2: complex, z3: complex) -> Circle:
    """Generalized circle through three distinct finite points (orientation: inside)."""
    det = ((z2 - z1) * (z3 - z1).conjugate()).imag
    scale = max(abs(z2 - z1), abs(z3 - z1), 1.0) ** 2
    if abs(det) < _COLLINEAR_TOL * scale:
        return Circle.line(z1, z2 - z1 if abs(z2 - z1) > _ZERO else z3 - z1)
    # Circumcenter from the perpendicular-bisector equations.
    a2 = abs(z1) ** 2
    b2 = abs(z2) ** 2
    c2 = abs(z3) ** 2
    num = a2 * (z2 - z3) + b2 * (z3 - z1) + c2 * (z1 - z2)
    den = z1.conjugate() * (z2 - z3) + z2.conjugate() * (z3 - z1) + z3.conjugate() * (z1 - z2)
    center = num / den
    return Circle.disk(center, abs(z1 - center))


def map_circle(f: MoebiusMap, circle: Circle) -> Circle:
    """Image of an oriented circle; the oriented disk maps onto the oriented disk.

    The image curve is the circle through three image points chosen away from
    the pole. Orientation is carried by one interior point of the source disk.
    """
    pole = f.pole

    def _far_from_pole(z: complex) -> float:
        return math.inf if pole.is_infinity else abs(z - pole.z)

    ordered = circle.sample_points(8)
    best = max(
        range(8), key=lambda j: min(_far_from_pole(ordered[(j + 3 * m) % 8]) for m in range(3))
    )
    picks = [ordered[best], ordered[(best + 3) % 8], ordered[(best + 6) % 8]]

    w1, w2, w3 = (f(z) for z in picks)
    image = circle_through(w1, w2, w3)

    probe = max(circle.interior_points(), key=_far_from_pole)
    q = f(probe)
    if image.is_line:
        oriented = Circle.line(image.point or 0j, image.direction or 1, True)
        inside = oriented.side(q) > 0
        return Circle.line(oriented.point or 0j, oriented.direction or 1, inside)
    return Circle.disk(image.c, image.r, abs(q - image.c) < image.r)


def disk_automorphism(a: complex, theta: float = 0.0) -> MoebiusMap:
    """z ↦ e^{iθ}(z − a)/(1 − āz), an automorphism of the unit disk (|a| < 1)."""
    if abs(a) >= 1:
        raise ValueError(f"Disk automorphism needs |a| < 1, got {abs(a)}")
    u = cmath.exp(1j * theta)
    return MoebiusMap(u, -u * a, -complex(a).conjugate(), 1)


CAYLEY = MoebiusMap(1, -1j, 1, 1j)
"""Half-plane to disk: z ↦ (z − i)/(z + i)."""

CAYLEY_INVERSE = CAYLEY.inverse()
"""Disk to half-plane: w ↦ i(1 + w)/(1 − w)."""
