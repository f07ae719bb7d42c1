"""Standard disk configurations on the real axis.

Each pair is joined by the hyperbolic pairing

    γ(z) = c' - r r' / (z - c)

which sends the circle |z - c| = r onto |w - c'| = r' and the exterior of the
first disk onto the interior of the second.
"""

from schottkit.moebius import Circle, MoebiusMap


def pairing_map(source: Circle, target: Circle) -> MoebiusMap:
    """Map ext(source) onto int(target) by inversion followed by translation."""
    c1, r1 = source.c, source.r
    c2, r2 = target.c, target.r
    return MoebiusMap(c2, -c2 * c1 - r1 * r2, 1, -c1)


def classical_configuration(
    genus: int,
    spacing: float = 3.0,
    radius: float = 1.0,
) -> tuple[list[Circle], list[MoebiusMap]]:
    """Disks D_{2i-1} at -spacing·i and D_{2i} at +spacing·i.

    Raises:
        ValueError: If the disks would not be disjoint
    """
    if genus < 2:
        raise ValueError(f"genus must be >= 2, got {genus}")
    if spacing <= 2 * radius:
        raise ValueError(f"spacing {spacing} must exceed the diameter {2 * radius}")
    disks: list[Circle] = []
    for i in range(1, genus + 1):
        disks.append(Circle.disk(-spacing * i, radius))
        disks.append(Circle.disk(spacing * i, radius))
    generators = [pairing_map(disks[2 * i], disks[2 * i + 1]) for i in range(genus)]
    return disks, generators


def tangent_configuration(genus: int) -> tuple[list[Circle], list[MoebiusMap]]:
    """Last pair D_{2g-1} = D(-1, 1), D_{2g} = D(1, 1) tangent at z_0 = 0.

    The last generator becomes z ↦ z/(z + 1), parabolic with fixed point 0.
    Earlier pairs sit at ∓3(i + 1) with radius 1.
    """
    if genus < 2:
        raise ValueError(f"genus must be >= 2, got {genus}")
    disks: list[Circle] = []
    for i in range(1, genus):
        disks.append(Circle.disk(-3.0 * (i + 1), 1.0))
        disks.append(Circle.disk(3.0 * (i + 1), 1.0))
    disks.append(Circle.disk(-1.0, 1.0))
    disks.append(Circle.disk(1.0, 1.0))
    generators = [pairing_map(disks[2 * i], disks[2 * i + 1]) for i in range(genus)]
    return disks, generators
