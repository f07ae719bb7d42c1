from schottkit.reporting.dot import graph_to_dot
from schottkit.reporting.exporters import (
    encode_artifact,
    records_frame,
    render_csv,
    write_artifacts,
    write_csv,
)
from schottkit.reporting.ppm import render_ppm
from schottkit.reporting.svg import (
    CANTOR_VIEW,
    SvgCircle,
    SvgLine,
    SvgPoint,
    cantor_shapes,
    graph_shapes,
    limit_set_shapes,
    points_shapes,
    render_svg,
)

__all__ = [
    "CANTOR_VIEW",
    "SvgCircle",
    "SvgLine",
    "SvgPoint",
    "cantor_shapes",
    "encode_artifact",
    "graph_shapes",
    "graph_to_dot",
    "limit_set_shapes",
    "points_shapes",
    "records_frame",
    "render_csv",
    "render_ppm",
    "render_svg",
    "write_artifacts",
    "write_csv",
]
