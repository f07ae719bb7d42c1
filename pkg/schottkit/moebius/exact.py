"""Exact Möbius algebra over the Gaussian rationals Q(i).

Used for integer-matrix groups where classification and counting should not
depend on floating-point tolerances. Matrices are kept unnormalized; the
invariant trace²/det decides the conjugacy type exactly.
"""

from dataclasses import dataclass
from fractions import Fraction

from schottkit.moebius.models import DegenerateMatrix, MapClass, MoebiusMap
from schottkit.utils.rational import format_fraction, to_fraction


@dataclass(frozen=True)
class GaussianRational:
    """re + i·im with rational parts."""

    re: Fraction
    im: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        object.__setattr__(self, "re", to_fraction(self.re))
        object.__setattr__(self, "im", to_fraction(self.im))

    @classmethod
    def of(cls, value: "int | Fraction | GaussianRational") -> "GaussianRational":
        if isinstance(value, GaussianRational):
            return value
        return cls(to_fraction(value))

    def __add__(self, other: "GaussianRational | int") -> "GaussianRational":
        o = GaussianRational.of(other)
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self) -> "GaussianRational":
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other: "GaussianRational | int") -> "GaussianRational":
        return self + (-GaussianRational.of(other))

    def __mul__(self, other: "GaussianRational | int") -> "GaussianRational":
        o = GaussianRational.of(other)
        return GaussianRational(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def norm(self) -> Fraction:
        """|z|² (exact)."""
        return self.re * self.re + self.im * self.im

    def __truediv__(self, other: "GaussianRational | int") -> "GaussianRational":
        o = GaussianRational.of(other)
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        p = self * o.conjugate()
        return GaussianRational(p.re / n, p.im / n)

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def is_real(self) -> bool:
        return self.im == 0

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __str__(self) -> str:
        if self.im == 0:
            return format_fraction(self.re)
        return f"{format_fraction(self.re)}{'+' if self.im >= 0 else '-'}{format_fraction(abs(self.im))}i"


@dataclass(frozen=True)
class ExactMoebius:
    """Unnormalized matrix [[a, b], [c, d]] over Q(i)."""

    a: GaussianRational
    b: GaussianRational
    c: GaussianRational
    d: GaussianRational

    def __post_init__(self) -> None:
        for name in ("a", "b", "c", "d"):
            object.__setattr__(self, name, GaussianRational.of(getattr(self, name)))
        if self.det.is_zero():
            raise DegenerateMatrix(0j)

    @classmethod
    def from_ints(cls, a: int, b: int, c: int, d: int) -> "ExactMoebius":
        return cls(*(GaussianRational.of(x) for x in (a, b, c, d)))

    @property
    def det(self) -> GaussianRational:
        return self.a * self.d - self.b * self.c

    @property
    def trace(self) -> GaussianRational:
        return self.a + self.d

    def compose(self, other: "ExactMoebius") -> "ExactMoebius":
        """self ∘ other."""
        return ExactMoebius(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    __matmul__ = compose

    def inverse(self) -> "ExactMoebius":
        return ExactMoebius(self.d, -self.b, -self.c, self.a)

    def trace_invariant(self) -> GaussianRational:
        """trace²/det, the normalization-free version of trace² in SL(2, C)."""
        return (self.trace * self.trace) / self.det

    def is_scalar(self) -> bool:
        return self.b.is_zero() and self.c.is_zero() and (self.a - self.d).is_zero()

    def classify(self) -> MapClass:
        """Exact conjugacy type."""
        if self.is_scalar():
            return MapClass.IDENTITY
        inv = self.trace_invariant()
        if inv.is_real() and inv.re == 4:
            return MapClass.PARABOLIC
        if inv.is_real() and 0 <= inv.re < 4:
            return MapClass.ELLIPTIC
        return MapClass.LOXODROMIC

    def to_float(self) -> MoebiusMap:
        return MoebiusMap(complex(self.a), complex(self.b), complex(self.c), complex(self.d))
