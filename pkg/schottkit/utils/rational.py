"""Exact rational helpers shared by the Cantor and pants modules.

Certificates are compared with exact ``Fraction`` arithmetic. Floats only
appear at the rendering boundary.
"""

from fractions import Fraction
from numbers import Rational

from schottkit.errors import ToolkitError


class RationalError(ToolkitError):
    """Base exception for rational conversions."""

    pass


def to_fraction(value: int | str | Fraction | Rational) -> Fraction:
    """Convert an exact value to a Fraction.

    Floats are rejected: a binary float silently carries representation
    error into what is supposed to be an exact certificate.

    Args:
        value: Integer, rational, or string such as ``"5/27"``

    Returns:
        Fraction representation

    Raises:
        RationalError: If the value is a float or cannot be parsed
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise RationalError(f"Refusing inexact float {value!r}; pass a string or Fraction")

    try:
        if isinstance(value, Rational):
            return Fraction(value.numerator, value.denominator)
        return Fraction(value)
    except (ValueError, ZeroDivisionError) as e:
        raise RationalError(f"Cannot convert {value!r} to Fraction: {e}") from e


def format_fraction(value: Fraction) -> str:
    """Render a fraction as ``p/q`` (or ``p`` for integers) for JSON reports."""
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def parse_fraction(text: str) -> Fraction:
    """Inverse of :func:`format_fraction`."""
    return to_fraction(text.strip())


def sign(i: int) -> int:
    """Return -1 for negative and +1 for positive integers.

    Raises:
        ValueError: If ``i`` is zero
    """
    if i == 0:
        raise ValueError("sign is undefined for index 0")
    return 1 if i > 0 else -1


def factorial_fraction(n: int) -> Fraction:
    """Return ``1/n!`` exactly."""
    if n < 0:
        raise ValueError(f"n must be non-negative, got {n}")
    out = 1
    for m in range(2, n + 1):
        out *= m
    return Fraction(1, out)
