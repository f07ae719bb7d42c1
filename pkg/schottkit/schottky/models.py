"""Domain types for Schottky groups, reduced words and nested-disk trees."""

from dataclasses import dataclass, field
from enum import Enum
from typing import Any

import numpy as np
import numpy.typing as npt

from schottkit.errors import ToolkitError
from schottkit.moebius import Circle, MoebiusMap


class SchottkyError(ToolkitError):
    """Base exception for Schottky group operations."""

    pass


class OverlapError(SchottkyError):
    """Raised when disk closures intersect where disjointness is required."""

    def __init__(self, pairs: list[tuple[int, int]]) -> None:
        listed = ", ".join(f"({i},{j})" for i, j in pairs)
        super().__init__(f"Overlapping disk closures: {listed}")
        self.pairs = pairs


class InvalidPairingError(SchottkyError):
    """Raised when a generator does not map ext(D_{2i-1}) onto int(D_{2i})."""

    def __init__(self, generators: list[int], residuals: list[float]) -> None:
        listed = ", ".join(f"γ_{i} (residual {r:.3e})" for i, r in zip(generators, residuals, strict=True))
        super().__init__(f"Invalid pairing: {listed}")
        self.generators = generators
        self.residuals = residuals


class DepthLimitError(SchottkyError):
    """Raised when a word/tree request exceeds the node budget."""

    def __init__(self, requested: int, budget: int) -> None:
        super().__init__(f"Requested {requested} nodes exceeds budget {budget}")
        self.requested = requested
        self.budget = budget


class ContractionFailure(SchottkyError):
    """Raised when a child disk is not contained in its parent."""

    def __init__(self, word: "GroupWord", margin: float) -> None:
        super().__init__(f"Disk of word {word} escapes its parent by {-margin:.3e}")
        self.word = word
        self.margin = margin


class DegenerateGroupError(SchottkyError):
    """Raised when an operation needs a classical group but got another class."""

    pass


class Validity(str, Enum):
    """Validity class of Schottky data."""

    CLASSICAL = "classical"
    TANGENT_DEGENERATE = "tangent_degenerate"
    INVALID = "invalid"


def letter_order(genus: int) -> list[int]:
    """Fixed letter order 1, -1, 2, -2, ... used for every enumeration."""
    return [s * i for i in range(1, genus + 1) for s in (1, -1)]


@dataclass(frozen=True)
class GroupWord:
    """A word in γ_1^{±1}, ..., γ_g^{±1}; letter +i is γ_i and -i is γ_i⁻¹."""

    letters: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "letters", tuple(int(x) for x in self.letters))
        if any(x == 0 for x in self.letters):
            raise ValueError("Letter 0 is not a generator")

    @property
    def length(self) -> int:
        return len(self.letters)

    @property
    def reduced(self) -> bool:
        return all(b != -a for a, b in zip(self.letters, self.letters[1:], strict=False))

    def inverse(self) -> "GroupWord":
        return GroupWord(tuple(-x for x in reversed(self.letters)))

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        if not self.letters:
            return "e"
        return " ".join(f"g{abs(x)}" if x > 0 else f"g{abs(x)}^-1" for x in self.letters)


@dataclass(frozen=True)
class SchottkyDiagnostics:
    """Measured quantities behind a validity verdict."""

    min_gap: float
    paired_gaps: tuple[float, ...]
    overlaps: tuple[tuple[int, int], ...]
    tangencies: tuple[tuple[int, int], ...]
    pairing_failures: tuple[int, ...]
    pairing_residuals: tuple[float, ...]
    notes: tuple[str, ...] = ()

    def to_json(self) -> dict[str, Any]:
        return {
            "min_gap": self.min_gap,
            "paired_gaps": list(self.paired_gaps),
            "overlaps": [list(p) for p in self.overlaps],
            "tangencies": [list(p) for p in self.tangencies],
            "pairing_failures": list(self.pairing_failures),
            "pairing_residuals": list(self.pairing_residuals),
            "notes": list(self.notes),
        }


@dataclass(frozen=True)
class SchottkyData:
    """g paired disks with their generators and a validity verdict."""

    genus: int
    disks: tuple[Circle, ...]
    generators: tuple[MoebiusMap, ...]
    validity: Validity
    diagnostics: SchottkyDiagnostics
    tangency_point: complex | None = None

    def disk_for(self, letter: int) -> Circle:
        """D(+i) = D_{2i} (image side of γ_i), D(-i) = D_{2i-1}."""
        i = abs(letter)
        return self.disks[2 * i - 1] if letter > 0 else self.disks[2 * i - 2]

    def generator_for(self, letter: int) -> MoebiusMap:
        g = self.generators[abs(letter) - 1]
        return g if letter > 0 else g.inverse()

    def to_json(self) -> dict[str, Any]:
        return {
            "genus": self.genus,
            "disks": [d.to_json() for d in self.disks],
            "generators": [g.to_json() for g in self.generators],
            "validity": self.validity.value,
            "tangency_point": (
                None
                if self.tangency_point is None
                else [self.tangency_point.real, self.tangency_point.imag]
            ),
            "diagnostics": self.diagnostics.to_json(),
        }


@dataclass(frozen=True)
class TreeLevel:
    """All nodes of one word length, stored column-wise.

    ``words[j]`` is the reduced word of node ``j``; ``parent[j]`` indexes the
    previous level (-1 for root disks).
    """

    depth: int
    words: npt.NDArray[np.int16]
    centers: npt.NDArray[np.complex128]
    radii: npt.NDArray[np.float64]
    parent: npt.NDArray[np.int64]
    expanded: npt.NDArray[np.bool_]
    min_margin: float

    @property
    def size(self) -> int:
        return int(self.radii.shape[0])


@dataclass(frozen=True)
class DiskTree:
    """Nested-disk approximation of a limit set, keyed by reduced words."""

    genus: int
    levels: tuple[TreeLevel, ...]
    max_depth: int
    max_radius: float | None = None
    verified: bool = True

    @property
    def node_count(self) -> int:
        return sum(level.size for level in self.levels)

    def level(self, depth: int) -> TreeLevel:
        """Nodes of word length ``depth`` (>= 1)."""
        return self.levels[depth - 1]

    def leaves(self) -> tuple[npt.NDArray[np.complex128], npt.NDArray[np.float64], npt.NDArray[np.int64]]:
        """Leaf centers, radii and depths, in level then node order."""
        centers: list[npt.NDArray[np.complex128]] = []
        radii: list[npt.NDArray[np.float64]] = []
        depths: list[npt.NDArray[np.int64]] = []
        for level in self.levels:
            mask = ~level.expanded
            centers.append(level.centers[mask])
            radii.append(level.radii[mask])
            depths.append(np.full(int(mask.sum()), level.depth, dtype=np.int64))
        return np.concatenate(centers), np.concatenate(radii), np.concatenate(depths)

    @property
    def accuracy(self) -> float:
        """Hausdorff bound of the leaf-center cloud: the largest leaf radius."""
        _, radii, _ = self.leaves()
        return float(radii.max()) if radii.size else 0.0

    def find(self, word: GroupWord) -> int:
        """Index of ``word`` within its level.

        Raises:
            KeyError: If the word is not a node of the tree
        """
        n = word.length
        if n < 1 or n > len(self.levels) or not word.reduced:
            raise KeyError(str(word))
        level = self.levels[n - 1]
        hits = np.flatnonzero((level.words == np.asarray(word.letters, dtype=np.int16)).all(axis=1))
        if hits.size == 0:
            raise KeyError(str(word))
        return int(hits[0])

    def word(self, depth: int, index: int) -> GroupWord:
        return GroupWord(tuple(int(x) for x in self.level(depth).words[index]))


@dataclass(frozen=True)
class ExhaustionLevel:
    """Counts and radius extrema of the region W_n."""

    n: int
    boundary_curves: int
    copies: int
    max_radius: float | None = None
    min_radius: float | None = None


@dataclass(frozen=True)
class ExhaustionStats:
    genus: int
    levels: tuple[ExhaustionLevel, ...] = field(default_factory=tuple)

    @property
    def boundary_curves(self) -> list[int]:
        return [lvl.boundary_curves for lvl in self.levels]

    @property
    def copies(self) -> list[int]:
        return [lvl.copies for lvl in self.levels]

    def to_json(self) -> dict[str, Any]:
        return {
            "genus": self.genus,
            "boundary_curves": self.boundary_curves,
            "copies": self.copies,
            "max_radius": [lvl.max_radius for lvl in self.levels],
            "min_radius": [lvl.min_radius for lvl in self.levels],
        }
