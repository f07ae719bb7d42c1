"""Deterministic SVG rendering of circles, lines and points.

Shapes are emitted in sorted order (kind, then key) with a fixed number of
decimals, so identical input gives byte-identical documents. World
coordinates are y-up; the y axis is flipped when writing.
"""

import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from typing import Union

import networkx as nx
import numpy as np

from schottkit.cantor import CircleFamily
from schottkit.schottky import DiskTree

CANTOR_VIEW = 1.3
DEFAULT_WIDTH = 800

_PALETTE = (
    "#1f4e79",
    "#2e75b6",
    "#00a3a3",
    "#4caf50",
    "#c0ca33",
    "#ffb300",
    "#f4511e",
    "#c2185b",
)


@dataclass(frozen=True)
class SvgCircle:
    cx: float
    cy: float
    r: float
    stroke: str = "#000000"
    fill: str = "none"
    key: tuple[int | str, ...] = ()


@dataclass(frozen=True)
class SvgLine:
    x1: float
    y1: float
    x2: float
    y2: float
    stroke: str = "#000000"
    dashed: bool = False
    key: tuple[int | str, ...] = ()


@dataclass(frozen=True)
class SvgPoint:
    x: float
    y: float
    label: str = ""
    fill: str = "#000000"
    key: tuple[int | str, ...] = ()


Shape = Union[SvgCircle, SvgLine, SvgPoint]

_KIND_ORDER = {SvgLine: 0, SvgCircle: 1, SvgPoint: 2}


def depth_color(depth: int) -> str:
    """Palette color cycling with word length."""
    return _PALETTE[(depth - 1) % len(_PALETTE)]


def _fmt(value: float, precision: int) -> str:
    text = f"{value:.{precision}f}"
    # "-0.000" and "0.000" must render identically
    if float(text) == 0.0:
        text = f"{0.0:.{precision}f}"
    return text


def _sort_key(shape: Shape) -> tuple[int, str, tuple[float, ...]]:
    if isinstance(shape, SvgCircle):
        coords: tuple[float, ...] = (shape.cx, shape.cy, shape.r)
    elif isinstance(shape, SvgLine):
        coords = (shape.x1, shape.y1, shape.x2, shape.y2)
    else:
        coords = (shape.x, shape.y)
    return (_KIND_ORDER[type(shape)], repr(shape.key), coords)


def _bounds(shapes: Sequence[Shape]) -> tuple[float, float, float, float]:
    xs: list[float] = []
    ys: list[float] = []
    for s in shapes:
        if isinstance(s, SvgCircle):
            xs += [s.cx - s.r, s.cx + s.r]
            ys += [s.cy - s.r, s.cy + s.r]
        elif isinstance(s, SvgLine):
            xs += [s.x1, s.x2]
            ys += [s.y1, s.y2]
        else:
            xs.append(s.x)
            ys.append(s.y)
    pad = 0.05 * max(max(xs) - min(xs), max(ys) - min(ys), 1e-9)
    return min(xs) - pad, min(ys) - pad, max(xs) + pad, max(ys) + pad


def render_svg(
    shapes: Iterable[Shape],
    view: tuple[float, float, float, float] | None = None,
    width: int = DEFAULT_WIDTH,
    precision: int = 6,
    title: str | None = None,
) -> str:
    """SVG document for ``shapes``.

    Args:
        shapes: Circles, lines and points in world coordinates
        view: (xmin, ymin, xmax, ymax); fitted to the shapes when omitted
        width: Pixel width; height follows the aspect ratio
        precision: Decimals for every coordinate
        title: Optional <title> element

    Returns:
        Complete SVG text. An empty shape list gives an empty canvas.

    Raises:
        ValueError: If a coordinate is not finite
    """
    items = sorted(shapes, key=_sort_key)
    for s in items:
        if not all(math.isfinite(v) for v in _sort_key(s)[2]):
            raise ValueError(f"Cannot render non-finite shape {s}")

    if view is None:
        view = _bounds(items) if items else (-1.0, -1.0, 1.0, 1.0)
    xmin, ymin, xmax, ymax = view
    w, h = xmax - xmin, ymax - ymin
    height = max(1, int(round(width * h / w)))
    f = lambda v: _fmt(v, precision)  # noqa: E731
    stroke_width = f(w / width)

    rows = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        (
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
            f'viewBox="{f(xmin)} {f(-ymax)} {f(w)} {f(h)}">'
        ),
    ]
    if title:
        rows.append(f"<title>{title}</title>")
    for s in items:
        if isinstance(s, SvgLine):
            dash = f' stroke-dasharray="{f(4 * w / width)}"' if s.dashed else ""
            rows.append(
                f'<line x1="{f(s.x1)}" y1="{f(-s.y1)}" x2="{f(s.x2)}" y2="{f(-s.y2)}" '
                f'stroke="{s.stroke}" stroke-width="{stroke_width}"{dash}/>'
            )
        elif isinstance(s, SvgCircle):
            rows.append(
                f'<circle cx="{f(s.cx)}" cy="{f(-s.cy)}" r="{f(s.r)}" '
                f'stroke="{s.stroke}" stroke-width="{stroke_width}" fill="{s.fill}"/>'
            )
        else:
            rows.append(
                f'<circle cx="{f(s.x)}" cy="{f(-s.y)}" r="{f(3 * w / width)}" fill="{s.fill}"/>'
            )
            if s.label:
                rows.append(
                    f'<text x="{f(s.x)}" y="{f(-s.y - 6 * w / width)}" '
                    f'font-size="{f(10 * w / width)}" text-anchor="middle">{s.label}</text>'
                )
    rows.append("</svg>")
    return "\n".join(rows) + "\n"


def cantor_shapes(family: CircleFamily) -> list[Shape]:
    """The imaginary axis C_0^0 plus every C_k^i, colored by level."""
    shapes: list[Shape] = [SvgLine(0.0, -CANTOR_VIEW, 0.0, CANTOR_VIEW, key=(0, 0))]
    for c in family.circles:
        if c.is_axis:
            continue
        assert c.center is not None and c.radius is not None
        shapes.append(
            SvgCircle(float(c.center), 0.0, float(c.radius), stroke=depth_color(c.level), key=c.key)
        )
    return shapes


def limit_set_shapes(tree: DiskTree, leaves_only: bool = False) -> list[Shape]:
    """Disks of the word tree, colored by word length."""
    shapes: list[Shape] = []
    levels = tree.levels[-1:] if leaves_only else tree.levels
    for level in levels:
        color = depth_color(level.depth)
        for j in range(level.size):
            c = complex(level.centers[j])
            shapes.append(
                SvgCircle(c.real, c.imag, float(level.radii[j]), stroke=color, key=(level.depth, j))
            )
    return shapes


def tree_layout(graph: nx.Graph) -> dict[int, tuple[float, float]]:
    """Heap-indexed pants laid out by level, positive keys right, negative left.

    P_n sits on level floor(log2 |n|), spread evenly across its half.
    """
    positions: dict[int, tuple[float, float]] = {}
    for n in graph.nodes:
        m = abs(int(n))
        level = m.bit_length() - 1
        slot = m - 2**level
        x = (slot + 0.5) / 2**level
        positions[int(n)] = (x if n > 0 else -x, -float(level))
    return positions


def graph_shapes(graph: nx.Graph, positions: dict[int, tuple[float, float]] | None = None) -> list[Shape]:
    """Edges as lines (doubling edges dashed) and nodes as labeled points."""
    pos = positions or tree_layout(graph)
    shapes: list[Shape] = []
    for u, v, data in graph.edges(data=True):
        a, b = sorted((int(u), int(v)))
        (x1, y1), (x2, y2) = pos[a], pos[b]
        shapes.append(SvgLine(x1, y1, x2, y2, dashed=bool(data.get("doubling")), key=(a, b)))
    for n in graph.nodes:
        x, y = pos[int(n)]
        shapes.append(SvgPoint(x, y, label=f"P{int(n)}", fill="#1f4e79", key=(int(n),)))
    return shapes


def points_shapes(points: np.ndarray, fill: str = "#1f4e79") -> list[Shape]:
    """Scatter of complex samples (e.g. annulus grids)."""
    flat = np.asarray(points, dtype=complex).ravel()
    return [SvgPoint(float(z.real), float(z.imag), fill=fill, key=(j,)) for j, z in enumerate(flat)]


__all__ = [
    "CANTOR_VIEW",
    "Shape",
    "SvgCircle",
    "SvgLine",
    "SvgPoint",
    "cantor_shapes",
    "depth_color",
    "graph_shapes",
    "limit_set_shapes",
    "points_shapes",
    "render_svg",
    "tree_layout",
]
