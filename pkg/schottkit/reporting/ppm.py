"""Binary PPM (P6) raster for limit sets too large for SVG."""

import logging

import numpy as np
import numpy.typing as npt

from schottkit.reporting.svg import depth_color

logger = logging.getLogger(__name__)


def _rgb(hex_color: str) -> tuple[int, int, int]:
    h = hex_color.lstrip("#")
    return int(h[0:2], 16), int(h[2:4], 16), int(h[4:6], 16)


def render_ppm(
    centers: npt.ArrayLike,
    radii: npt.ArrayLike,
    depths: npt.ArrayLike,
    view: tuple[float, float, float, float],
    size: int = 1024,
) -> bytes:
    """Paint filled disks on a white square canvas, coarse levels first.

    Disks below one pixel are plotted as their center pixel.

    Args:
        centers: Complex disk centers
        radii: Disk radii
        depths: Word length of each disk (selects the color)
        view: (xmin, ymin, xmax, ymax) in world coordinates
        size: Pixel width; height follows the aspect ratio

    Returns:
        P6 file contents
    """
    c = np.asarray(centers, dtype=complex).ravel()
    r = np.asarray(radii, dtype=float).ravel()
    d = np.asarray(depths, dtype=np.int64).ravel()
    xmin, ymin, xmax, ymax = view
    scale = size / (xmax - xmin)
    height = max(1, int(round((ymax - ymin) * scale)))
    image = np.full((height, size, 3), 255, dtype=np.uint8)

    px = (c.real - xmin) * scale
    py = (ymax - c.imag) * scale
    pr = r * scale

    for depth in np.unique(d):
        color = np.array(_rgb(depth_color(int(depth))), dtype=np.uint8)
        mask = d == depth
        small = mask & (pr < 1.0)
        ix = np.floor(px[small]).astype(np.int64)
        iy = np.floor(py[small]).astype(np.int64)
        keep = (ix >= 0) & (ix < size) & (iy >= 0) & (iy < height)
        image[iy[keep], ix[keep]] = color

        for j in np.flatnonzero(mask & (pr >= 1.0)):
            x0, x1 = max(0, int(px[j] - pr[j])), min(size, int(px[j] + pr[j]) + 1)
            y0, y1 = max(0, int(py[j] - pr[j])), min(height, int(py[j] + pr[j]) + 1)
            if x0 >= x1 or y0 >= y1:
                continue
            yy, xx = np.mgrid[y0:y1, x0:x1]
            inside = (xx + 0.5 - px[j]) ** 2 + (yy + 0.5 - py[j]) ** 2 <= pr[j] ** 2
            image[y0:y1, x0:x1][inside] = color

    logger.debug(f"Rasterized {c.size} disks onto {size}x{height}")
    header = f"P6\n{size} {height}\n255\n".encode("ascii")
    return header + image.tobytes()


__all__ = ["render_ppm"]
