"""Schottky engine - validates disk data and expands nested-disk trees."""

import logging
import math
from collections.abc import Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import combinations

import numpy as np
import numpy.typing as npt

from schottkit.moebius import Circle, MapClass, MoebiusMap, SpherePoint, classify, map_circle
from schottkit.schottky.models import (
    ContractionFailure,
    DegenerateGroupError,
    DepthLimitError,
    DiskTree,
    ExhaustionLevel,
    ExhaustionStats,
    GroupWord,
    InvalidPairingError,
    OverlapError,
    SchottkyData,
    SchottkyDiagnostics,
    TreeLevel,
    Validity,
    letter_order,
)
from schottkit.schottky.words import (
    DEFAULT_NODE_BUDGET,
    boundary_curve_count,
    copy_count,
    word_count,
)

logger = logging.getLogger(__name__)

NESTING_TOL = 1e-9

_Arr = npt.NDArray[np.complex128]


@dataclass(frozen=True)
class _Frontier:
    """Per-node Möbius matrices of the current level (never published)."""

    a: _Arr
    b: _Arr
    c: _Arr
    d: _Arr
    last: npt.NDArray[np.int16]


def _closure_gap(d1: Circle, d2: Circle) -> float:
    return abs(d1.c - d2.c) - d1.r - d2.r


def _tangency_point(d1: Circle, d2: Circle) -> complex:
    u = (d2.c - d1.c) / abs(d2.c - d1.c)
    return d1.c + d1.r * u


def _pairing_residual(gamma: MoebiusMap, source: Circle, target: Circle) -> float:
    image = map_circle(gamma, source.flipped())
    if image.is_line or not image.inside:
        return math.inf
    return abs(image.c - target.c) + abs(image.r - target.r)


def _image_disks(
    frontier: _Frontier, center: complex, radius: float
) -> tuple[_Arr, npt.NDArray[np.float64]]:
    """Images of one round disk under every frontier map (pole outside the disk)."""
    q = frontier.c * center + frontier.d
    den = np.abs(q) ** 2 - np.abs(frontier.c) ** 2 * radius**2
    centers = ((frontier.a * center + frontier.b) * np.conj(q) - frontier.a * np.conj(frontier.c) * radius**2) / den
    radii = radius / np.abs(den)
    return centers, radii


class SchottkyEngine:
    """Builds Schottky data and expands its disk trees.

    Responsibilities:
    - Classify disk/generator data as classical, tangent-degenerate or invalid
    - Expand the nested-disk tree level by level (optionally in worker threads)
    - Report exhaustion counts and radius extrema
    """

    def __init__(
        self,
        node_budget: int = DEFAULT_NODE_BUDGET,
        tol: float = 1e-9,
        workers: int = 1,
        parallel_threshold: int = 4096,
    ) -> None:
        self.node_budget = node_budget
        self.tol = tol
        self.workers = max(1, workers)
        self.parallel_threshold = parallel_threshold

    def build(
        self,
        disks: Sequence[Circle],
        generators: Sequence[MoebiusMap],
        strict: bool = True,
    ) -> SchottkyData:
        """Validate and classify Schottky data.

        Args:
            disks: D_1, ..., D_{2g} as proper circles with ``inside=True``
            generators: γ_1, ..., γ_g; γ_i maps ext(D_{2i-1}) onto int(D_{2i})
            strict: Raise on invalid data instead of returning ``Validity.INVALID``

        Returns:
            SchottkyData with validity and diagnostics

        Raises:
            ValueError: If counts or disk types are wrong
            OverlapError: If closures intersect (strict mode)
            InvalidPairingError: If a pairing fails (strict mode)
        """
        genus = len(generators)
        if genus < 2:
            raise ValueError(f"Need at least 2 generators, got {genus}")
        if len(disks) != 2 * genus:
            raise ValueError(f"Need {2 * genus} disks for {genus} generators, got {len(disks)}")
        for idx, disk in enumerate(disks, start=1):
            if disk.is_line or not disk.inside:
                raise ValueError(f"D_{idx} must be a round disk oriented inside")

        gaps: dict[tuple[int, int], float] = {}
        for i, j in combinations(range(len(disks)), 2):
            gaps[(i + 1, j + 1)] = _closure_gap(disks[i], disks[j])

        overlaps = tuple(p for p, gap in gaps.items() if gap < -self.tol)
        tangencies = tuple(p for p, gap in gaps.items() if abs(gap) <= self.tol)
        paired_gaps = tuple(gaps[(2 * i + 1, 2 * i + 2)] for i in range(genus))

        residuals = tuple(
            _pairing_residual(generators[i], disks[2 * i], disks[2 * i + 1]) for i in range(genus)
        )
        failures = tuple(i + 1 for i, r in enumerate(residuals) if not r <= self.tol * 10)

        notes: list[str] = []
        validity = Validity.INVALID
        witness: complex | None = None
        last_pair = (2 * genus - 1, 2 * genus)

        if not overlaps and not failures and not tangencies:
            validity = Validity.CLASSICAL
        elif not overlaps and not failures and tangencies == (last_pair,):
            z0 = _tangency_point(disks[2 * genus - 2], disks[2 * genus - 1])
            cls = classify(generators[-1])
            fixes_z0 = any(
                not p.is_infinity and abs(p.z - z0) <= self.tol for p in cls.fixed_points
            )
            if cls.kind is MapClass.PARABOLIC and fixes_z0:
                validity = Validity.TANGENT_DEGENERATE
                witness = z0
            else:
                notes.append(f"γ_{genus} is {cls.kind.value} and does not fix the tangency point")
        elif tangencies:
            notes.append(f"Tangent pairs {list(tangencies)} do not match the degenerate pattern")

        diagnostics = SchottkyDiagnostics(
            min_gap=min(gaps.values()),
            paired_gaps=paired_gaps,
            overlaps=overlaps,
            tangencies=tangencies,
            pairing_failures=failures,
            pairing_residuals=residuals,
            notes=tuple(notes),
        )

        if validity is Validity.INVALID and strict:
            if overlaps or tangencies:
                raise OverlapError(sorted(overlaps + tangencies))
            raise InvalidPairingError(list(failures), [residuals[i - 1] for i in failures])

        logger.info(
            f"Schottky data g={genus}: {validity.value} (min gap {diagnostics.min_gap:.3e})"
        )
        return SchottkyData(
            genus=genus,
            disks=tuple(disks),
            generators=tuple(generators),
            validity=validity,
            diagnostics=diagnostics,
            tangency_point=witness,
        )

    def _root_level(self, data: SchottkyData) -> tuple[TreeLevel, _Frontier]:
        letters = letter_order(data.genus)
        disks = [data.disk_for(x) for x in letters]
        maps = [data.generator_for(x) for x in letters]
        level = TreeLevel(
            depth=1,
            words=np.array([[x] for x in letters], dtype=np.int16),
            centers=np.array([d.c for d in disks], dtype=complex),
            radii=np.array([d.r for d in disks], dtype=float),
            parent=np.full(len(letters), -1, dtype=np.int64),
            expanded=np.zeros(len(letters), dtype=bool),
            min_margin=math.inf,
        )
        frontier = _Frontier(
            a=np.array([m.a for m in maps]),
            b=np.array([m.b for m in maps]),
            c=np.array([m.c for m in maps]),
            d=np.array([m.d for m in maps]),
            last=np.array(letters, dtype=np.int16),
        )
        return level, frontier

    def _expand_chunk(
        self, data: SchottkyData, frontier: _Frontier
    ) -> tuple[_Arr, npt.NDArray[np.float64], npt.NDArray[np.int64], npt.NDArray[np.int16], _Frontier]:
        """Children of a contiguous block of parents, parent-major then letter order."""
        letters = letter_order(data.genus)
        n = frontier.a.shape[0]
        width = len(letters)

        centers = np.empty((n, width), dtype=complex)
        radii = np.empty((n, width), dtype=float)
        na = np.empty((n, width), dtype=complex)
        nb = np.empty((n, width), dtype=complex)
        nc = np.empty((n, width), dtype=complex)
        nd = np.empty((n, width), dtype=complex)
        allowed = np.empty((n, width), dtype=bool)

        for col, letter in enumerate(letters):
            disk = data.disk_for(letter)
            g = data.generator_for(letter)
            allowed[:, col] = frontier.last != -letter
            centers[:, col], radii[:, col] = _image_disks(frontier, disk.c, disk.r)
            na[:, col] = frontier.a * g.a + frontier.b * g.c
            nb[:, col] = frontier.a * g.b + frontier.b * g.d
            nc[:, col] = frontier.c * g.a + frontier.d * g.c
            nd[:, col] = frontier.c * g.b + frontier.d * g.d

        parent = np.repeat(np.arange(n, dtype=np.int64), width).reshape(n, width)
        last = np.tile(np.asarray(letters, dtype=np.int16), (n, 1))
        mask = allowed.ravel()

        # Renormalize to det 1 to keep round-off from compounding along deep words.
        a, b, c, d = (x.ravel()[mask] for x in (na, nb, nc, nd))
        s = np.sqrt(a * d - b * c)
        child = _Frontier(a / s, b / s, c / s, d / s, last.ravel()[mask])
        return centers.ravel()[mask], radii.ravel()[mask], parent.ravel()[mask], last.ravel()[mask], child

    def _expand_level(
        self, data: SchottkyData, frontier: _Frontier
    ) -> tuple[_Arr, npt.NDArray[np.float64], npt.NDArray[np.int64], npt.NDArray[np.int16], _Frontier]:
        n = frontier.a.shape[0]
        if self.workers == 1 or n < self.parallel_threshold:
            return self._expand_chunk(data, frontier)

        bounds = np.linspace(0, n, self.workers + 1, dtype=np.int64)
        chunks = [
            _Frontier(*(x[lo:hi] for x in (frontier.a, frontier.b, frontier.c, frontier.d, frontier.last)))
            for lo, hi in zip(bounds[:-1], bounds[1:], strict=True)
            if hi > lo
        ]
        offsets = [int(lo) for lo, hi in zip(bounds[:-1], bounds[1:], strict=True) if hi > lo]
        with ThreadPoolExecutor(max_workers=self.workers) as pool:
            results = list(pool.map(lambda ch: self._expand_chunk(data, ch), chunks))

        # Concatenate in chunk order so node order never depends on scheduling.
        centers = np.concatenate([r[0] for r in results])
        radii = np.concatenate([r[1] for r in results])
        parent = np.concatenate([r[2] + off for r, off in zip(results, offsets, strict=True)])
        last = np.concatenate([r[3] for r in results])
        child = _Frontier(
            *(np.concatenate([getattr(r[4], f) for r in results]) for f in ("a", "b", "c", "d", "last"))
        )
        return centers, radii, parent, last, child

    def disk_tree(
        self,
        data: SchottkyData,
        max_depth: int,
        max_radius: float | None = None,
        verify: bool = True,
    ) -> DiskTree:
        """Expand the word tree of disk images.

        Depth counts word length; the 2g root disks are depth 1, so
        ``max_depth`` 0 and 1 both return only the roots.

        Raises:
            DepthLimitError: If the full tree would exceed the node budget
            ContractionFailure: If ``verify`` and a child escapes its parent
        """
        if max_depth < 0:
            raise ValueError(f"max_depth must be >= 0, got {max_depth}")
        depth = max(1, max_depth)
        if max_radius is None:
            total = sum(word_count(data.genus, n) for n in range(1, depth + 1))
            if total > self.node_budget:
                raise DepthLimitError(total, self.node_budget)

        level, frontier = self._root_level(data)
        levels: list[TreeLevel] = []
        nodes = level.size

        for n in range(2, depth + 1):
            expand = np.ones(level.size, dtype=bool)
            if max_radius is not None:
                expand = level.radii >= max_radius
            if not expand.any():
                break
            level = TreeLevel(
                level.depth, level.words, level.centers, level.radii, level.parent, expand, level.min_margin
            )
            levels.append(level)

            parents_idx = np.flatnonzero(expand)
            sub = _Frontier(
                frontier.a[parents_idx],
                frontier.b[parents_idx],
                frontier.c[parents_idx],
                frontier.d[parents_idx],
                frontier.last[parents_idx],
            )
            centers, radii, local_parent, last, frontier = self._expand_level(data, sub)
            parent = parents_idx[local_parent]
            nodes += radii.shape[0]
            if nodes > self.node_budget:
                raise DepthLimitError(nodes, self.node_budget)

            margins = level.radii[parent] - (np.abs(centers - level.centers[parent]) + radii)
            min_margin = float(margins.min())
            if verify and min_margin < -NESTING_TOL:
                bad = int(np.argmin(margins))
                word = GroupWord(tuple(int(x) for x in level.words[parent[bad]]) + (int(last[bad]),))
                raise ContractionFailure(word, min_margin)

            words = np.concatenate([level.words[parent], last[:, None]], axis=1)
            level = TreeLevel(
                depth=n,
                words=words,
                centers=centers,
                radii=radii,
                parent=parent,
                expanded=np.zeros(radii.shape[0], dtype=bool),
                min_margin=min_margin,
            )
            logger.debug(f"Depth {n}: {level.size} disks, max radius {radii.max():.3e}")

        levels.append(level)
        return DiskTree(
            genus=data.genus,
            levels=tuple(levels),
            max_depth=max_depth,
            max_radius=max_radius,
            verified=verify,
        )

    def limit_set(
        self,
        data: SchottkyData,
        max_depth: int,
        max_radius: float | None = None,
    ) -> DiskTree:
        """Nested-disk approximation of Λ(G) for classical data.

        Raises:
            DegenerateGroupError: If the data is not classical
            ContractionFailure: If nesting fails during expansion
            DepthLimitError: If the node budget is exceeded
        """
        if data.validity is not Validity.CLASSICAL:
            raise DegenerateGroupError(
                f"limit_set needs classical data, got {data.validity.value}"
            )
        tree = self.disk_tree(data, max_depth, max_radius, verify=True)
        logger.info(
            f"Limit set approximation: {tree.node_count} disks, accuracy {tree.accuracy:.3e}"
        )
        return tree

    def exhaustion_stats(
        self, data: SchottkyData, n_max: int, with_radii: bool = True
    ) -> ExhaustionStats:
        """Exact counts for W_0..W_{n_max} plus radius extrema of their boundary circles.

        The boundary circles of W_n are the disks of word length n + 1.

        Raises:
            DegenerateGroupError: If radii are requested for non-classical data
            DepthLimitError: If the tree would exceed the node budget
        """
        if n_max < 0:
            raise ValueError(f"n_max must be >= 0, got {n_max}")
        if boundary_curve_count(data.genus, n_max) > self.node_budget:
            raise DepthLimitError(boundary_curve_count(data.genus, n_max), self.node_budget)

        tree: DiskTree | None = None
        if with_radii:
            tree = self.limit_set(data, n_max + 1)

        levels = []
        for n in range(n_max + 1):
            max_r: float | None = None
            min_r: float | None = None
            if tree is not None:
                radii = tree.level(n + 1).radii
                max_r, min_r = float(radii.max()), float(radii.min())
            levels.append(
                ExhaustionLevel(
                    n=n,
                    boundary_curves=boundary_curve_count(data.genus, n),
                    copies=copy_count(data.genus, n),
                    max_radius=max_r,
                    min_radius=min_r,
                )
            )
        return ExhaustionStats(genus=data.genus, levels=tuple(levels))


def _touches(disk: Circle, point: SpherePoint, tol: float) -> bool:
    if point.is_infinity:
        return disk.is_line
    return disk.on_curve(point.z, tol)


def detect_parabolic_cusp(data: SchottkyData, tol: float = 1e-9) -> tuple[int, SpherePoint] | None:
    """Return (generator index, fixed point) of the parabolic generator closing a tangency.

    A generator whose fixed point is the recorded tangency witness and lies on
    both of its own disks wins, then any generator whose disk pair touches at
    its fixed point, then the first parabolic generator. ∞ counts as a fixed
    point on a pair of half-planes.
    """
    if data.validity is Validity.CLASSICAL:
        return None
    parabolic: list[tuple[int, SpherePoint]] = []
    for idx, g in enumerate(data.generators, start=1):
        cls = classify(g, tol)
        if cls.kind is MapClass.PARABOLIC:
            parabolic.append((idx, cls.fixed_points[0]))
    if not parabolic:
        return None

    witness = data.tangency_point

    def rank(entry: tuple[int, SpherePoint]) -> tuple[bool, bool, int]:
        idx, point = entry
        touching = all(_touches(d, point, tol) for d in data.disks[2 * idx - 2 : 2 * idx])
        at_witness = witness is not None and not point.is_infinity and abs(point.z - witness) <= tol
        return (not (touching and at_witness), not touching, idx)

    return min(parabolic, key=rank)


def build_schottky(
    disks: Sequence[Circle],
    generators: Sequence[MoebiusMap],
    strict: bool = True,
    tol: float = 1e-9,
) -> SchottkyData:
    """Module-level shortcut for :meth:`SchottkyEngine.build`."""
    return SchottkyEngine(tol=tol).build(disks, generators, strict=strict)


def limit_set(
    data: SchottkyData,
    max_depth: int,
    max_radius: float | None = None,
    node_budget: int = DEFAULT_NODE_BUDGET,
) -> DiskTree:
    """Module-level shortcut for :meth:`SchottkyEngine.limit_set`."""
    return SchottkyEngine(node_budget=node_budget).limit_set(data, max_depth, max_radius)


def exhaustion_stats(
    data: SchottkyData,
    n_max: int,
    with_radii: bool = True,
    node_budget: int = DEFAULT_NODE_BUDGET,
) -> ExhaustionStats:
    """Module-level shortcut for :meth:`SchottkyEngine.exhaustion_stats`."""
    return SchottkyEngine(node_budget=node_budget).exhaustion_stats(data, n_max, with_radii)
