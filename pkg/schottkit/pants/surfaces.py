"""Surfaces glued from pairs of pants.

A ``GluedSurface`` is a set of pants keyed by integers plus gluings of
boundary slots. Twists are not modeled. Two constructions live here: the
doubled binary tree X_∞ truncated at k generations, and the factorial
chains whose spectra drive the obstruction scan.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

import networkx as nx

from schottkit.pants.hyperbolic import (
    Length,
    PantsError,
    PantsSpec,
    check_slot,
    length_to_json,
)
from schottkit.pants.spectra import factorial_lengths
from schottkit.reporting.dot import graph_to_dot

logger = logging.getLogger(__name__)

Slot = tuple[int, int]


class GluingError(PantsError):
    """Raised for a gluing of unequal lengths or of an already used slot."""

    def __init__(self, message: str, slots: tuple[Slot, ...] = ()) -> None:
        super().__init__(message)
        self.slots = slots


def slot_label(slot: Slot) -> str:
    pants, position = slot
    return f"alpha_{position},{pants}"


@dataclass(frozen=True)
class Gluing:
    """Identification of two boundary slots of equal length."""

    first: Slot
    second: Slot
    length: Length
    label: str
    doubling: bool = False

    def to_json(self) -> dict[str, Any]:
        return {
            "first": list(self.first),
            "second": list(self.second),
            "length": length_to_json(self.length),
            "label": self.label,
            "doubling": self.doubling,
        }


@dataclass
class GluedSurface:
    """Pants plus gluings; every slot is glued at most once."""

    name: str
    pants: dict[int, PantsSpec] = field(default_factory=dict)
    gluings: list[Gluing] = field(default_factory=list)
    names: dict[int, str] = field(default_factory=dict)
    boundary_names: dict[Slot, str] = field(default_factory=dict)
    _used: set[Slot] = field(default_factory=set, init=False, repr=False)

    def __post_init__(self) -> None:
        for g in self.gluings:
            self._used.update((g.first, g.second))

    def add_pants(self, key: int, spec: PantsSpec, name: str | None = None) -> None:
        if key in self.pants:
            raise GluingError(f"Pants {key} already present in {self.name}")
        self.pants[key] = spec
        if name is not None:
            self.names[key] = name

    def used_slots(self) -> set[Slot]:
        return set(self._used)

    def slot_length(self, slot: Slot) -> Length:
        pants, position = slot
        if pants not in self.pants:
            raise GluingError(f"Unknown pants {pants} in {self.name}", (slot,))
        return self.pants[pants].length(position)

    def glue(self, a: Slot, b: Slot, label: str | None = None, doubling: bool = False) -> Gluing:
        """Identify two slots.

        Raises:
            GluingError: If a slot is unknown or already glued, or the lengths differ
        """
        check_slot(a[1])
        check_slot(b[1])
        if a == b:
            raise GluingError(f"Cannot glue {slot_label(a)} to itself", (a,))
        for slot in (a, b):
            if slot in self._used:
                raise GluingError(f"Slot {slot_label(slot)} is already glued", (slot,))
        la, lb = self.slot_length(a), self.slot_length(b)
        if la != lb:
            raise GluingError(
                f"Cannot glue {slot_label(a)} (length {la}) to {slot_label(b)} (length {lb})",
                (a, b),
            )
        gluing = Gluing(a, b, la, label or f"{slot_label(a)}={slot_label(b)}", doubling)
        self.gluings.append(gluing)
        self._used.update((a, b))
        return gluing

    def free_boundaries(self) -> list[Slot]:
        used = self._used
        return sorted(
            (key, position)
            for key in self.pants
            for position in (1, 2, 3)
            if (key, position) not in used
        )

    def boundary_of(self, keys: set[int] | list[int] | range) -> list[Slot]:
        """Boundary slots of the subsurface made of the pants in ``keys``.

        A slot counts when it is free or glued to a pants outside ``keys``.
        """
        inside = set(keys)
        missing = inside - set(self.pants)
        if missing:
            raise GluingError(f"Unknown pants {sorted(missing)} in {self.name}")
        partner: dict[Slot, Slot] = {}
        for g in self.gluings:
            partner[g.first] = g.second
            partner[g.second] = g.first
        return sorted(
            (key, position)
            for key in inside
            for position in (1, 2, 3)
            if (key, position) not in partner or partner[(key, position)][0] not in inside
        )

    def boundary_label(self, slot: Slot) -> str:
        return self.boundary_names.get(slot, slot_label(slot))

    def genus(self) -> int:
        """Genus of a connected surface from χ = -(number of pants).

        Raises:
            PantsError: If the surface is not connected
        """
        if not self.pants:
            raise PantsError(f"Surface {self.name} has no pants")
        if not nx.is_connected(self.to_networkx(multigraph=True)):
            raise PantsError(f"Surface {self.name} is not connected")
        twice = 2 + len(self.pants) - len(self.free_boundaries())
        return twice // 2

    def is_bounded(self, M: float | Fraction) -> bool:
        """True when every pants has all boundary lengths in [1/M, M]."""
        return all(spec.is_bounded(M) for spec in self.pants.values())

    def curve_lengths(self) -> dict[str, Length]:
        """Lengths of all gluing curves and free boundaries by label."""
        lengths = {g.label: g.length for g in self.gluings}
        for slot in self.free_boundaries():
            lengths[self.boundary_label(slot)] = self.slot_length(slot)
        return lengths

    def to_networkx(self, multigraph: bool = False) -> nx.Graph:
        """Adjacency of pants; edge attribute ``circle`` holds the gluing label.

        The simple graph keeps one edge per pair of pants.
        """
        graph: nx.Graph = nx.MultiGraph() if multigraph else nx.Graph()
        for key in sorted(self.pants):
            graph.add_node(key, label=self.names.get(key, f"P_{key}"))
        for g in self.gluings:
            graph.add_edge(g.first[0], g.second[0], circle=g.label, doubling=g.doubling)
        return graph

    def to_dot(self) -> str:
        return graph_to_dot(self.to_networkx(multigraph=True), name=self.name)

    def to_json(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "pants": {str(k): self.pants[k].to_json() for k in sorted(self.pants)},
            "gluings": [g.to_json() for g in self.gluings],
            "free_boundaries": [self.boundary_label(s) for s in self.free_boundaries()],
        }


@dataclass
class XInfinity(GluedSurface):
    """X_∞ truncated after ``generations`` on each side of the doubling curve."""

    generations: int = 1
    subsurface_genus: int | None = None

    def half(self, side: int = 1) -> list[int]:
        """Pants keys of X_k (side +1) or X_(-k) (side -1)."""
        return [side * n for n in range(1, 2**self.generations)]

    def half_boundary(self, side: int = 1) -> list[Slot]:
        return self.boundary_of(self.half(side))

    def subsurface(self) -> list[int]:
        """Pants P_1..P_(2g-2): a genus-zero piece with 2g boundary curves."""
        if self.subsurface_genus is None:
            return []
        return list(range(1, 2 * self.subsurface_genus - 1))

    def subsurface_boundary(self) -> list[Slot]:
        keys = self.subsurface()
        return self.boundary_of(keys) if keys else []

    def to_json(self) -> dict[str, Any]:
        data = super().to_json()
        data["generations"] = self.generations
        data["half_boundary"] = [self.boundary_label(s) for s in self.half_boundary(1)]
        data["half_boundary_count"] = len(self.half_boundary(1))
        if self.subsurface_genus is not None:
            data["subsurface"] = {
                "genus": self.subsurface_genus,
                "pants": self.subsurface(),
                "boundary": [self.boundary_label(s) for s in self.subsurface_boundary()],
            }
        return data


def build_xinfty(
    generations: int,
    length: Length = Fraction(1),
    subsurface_genus: int | None = None,
) -> XInfinity:
    """Glue X_k and X_(-k) from copies of P and identify α_(1,1) with α_(1,-1).

    Slot 2 of P_n meets slot 1 of P_(2n) and slot 3 meets slot 1 of P_(2n+1),
    mirrored on the negative side, so X_k consists of P_1..P_(2^k - 1) and is
    bounded by 2^k + 1 curves.

    Args:
        generations: k >= 1
        length: Common boundary length of every copy of P
        subsurface_genus: Also describe the piece made of P_1..P_(2g-2) (g >= 2)

    Raises:
        ValueError: If k < 1 or the subsurface does not fit in k generations
    """
    if generations < 1:
        raise ValueError(f"generations must be >= 1, got {generations}")
    if subsurface_genus is not None:
        if subsurface_genus < 2:
            raise ValueError(f"subsurface genus must be >= 2, got {subsurface_genus}")
        if 2 * subsurface_genus - 2 > 2**generations - 1:
            raise ValueError(
                f"genus {subsurface_genus} needs {2 * subsurface_genus - 2} pants; "
                f"{generations} generations hold {2**generations - 1}"
            )

    surface = XInfinity(
        name=f"X_inf[{generations}]",
        generations=generations,
        subsurface_genus=subsurface_genus,
    )
    spec = PantsSpec.of(length, length, length)
    last = 2**generations - 1
    for side in (1, -1):
        for n in range(1, last + 1):
            surface.add_pants(side * n, spec)
        for n in range(1, 2 ** (generations - 1)):
            surface.glue((side * n, 2), (side * 2 * n, 1))
            surface.glue((side * n, 3), (side * (2 * n + 1), 1))
    surface.glue((1, 1), (-1, 1), label="alpha_1,1=alpha_1,-1", doubling=True)

    logger.info(
        f"Built X_inf with {generations} generations: {len(surface.pants)} pants, "
        f"X_k bounded by {len(surface.half_boundary(1))} curves"
    )
    return surface


def factorial_surface(n_max: int, start: int = 0) -> GluedSurface:
    """Genus-one cap S followed by T_start..T_(n_max - 1), bounded by alpha_(n_max).

    S is one pants (1, 1, 1) glued to itself along two unit curves. T_n is
    two pants (1, 1, a_n) and (1, 1, a_(n+1)) glued along both unit curves.
    Curve labels match :func:`schottkit.pants.spectra.factorial_spectra`.

    Raises:
        ValueError: If start is not 0 or 1, or n_max <= start
    """
    if start not in (0, 1):
        raise ValueError(f"start must be 0 or 1, got {start}")
    if n_max <= start:
        raise ValueError(f"n_max must exceed start={start}, got {n_max}")

    a = factorial_lengths(n_max)
    one = Fraction(1)
    surface = GluedSurface(name=f"R{start + 1}[{n_max}]")
    surface.add_pants(0, PantsSpec.of(one, one, one), name="S")
    surface.glue((0, 1), (0, 2), label="sigma")

    previous: Slot = (0, 3)
    for n in range(start, n_max):
        inner, outer = 2 * n + 1, 2 * n + 2
        surface.add_pants(inner, PantsSpec.of(one, one, a[n]), name=f"T{n}a")
        surface.add_pants(outer, PantsSpec.of(one, one, a[n + 1]), name=f"T{n}b")
        surface.glue((inner, 1), (outer, 1), label=f"beta_{n}_1")
        surface.glue((inner, 2), (outer, 2), label=f"beta_{n}_2")
        surface.glue(previous, (inner, 3), label=f"alpha_{n}")
        previous = (outer, 3)
    surface.boundary_names[previous] = f"alpha_{n_max}"

    logger.debug(f"Built {surface.name} with {len(surface.pants)} pants")
    return surface


__all__ = [
    "Gluing",
    "GluedSurface",
    "GluingError",
    "Slot",
    "XInfinity",
    "build_xinfty",
    "factorial_surface",
    "slot_label",
]
