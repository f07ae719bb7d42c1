"""Equivariant boundary maps, quasi-symmetry scans and Douady-Earle extensions."""

from schottkit.qc.annulus import (
    TRACE_OFFSET,
    annulus_moduli,
    annulus_pair,
    covering_map,
    glue_annulus_map,
)
from schottkit.qc.barycenter import (
    CircleMap,
    douady_earle,
    douady_earle_many,
    solve_barycenters,
    uniform_nodes,
)
from schottkit.qc.boundary import (
    BoundaryMap,
    build_boundary_map,
    identity_map,
    power_map,
    qs_constants,
    qs_ratio,
    scaling_residual,
    tail_bound,
)
from schottkit.qc.extension import (
    BREACH_MARGIN,
    beltrami_log_polar,
    check_quasiconformality,
    extend_equivariant,
    extend_points,
    fundamental_grid,
)
from schottkit.qc.models import (
    AnnulusPair,
    AnnulusReport,
    BarycenterResult,
    CaseExtrema,
    ExtensionGrid,
    MonotonicityError,
    QCError,
    QSReport,
    QuasiconformalityBreach,
    SeamError,
    SolverDivergence,
)

__all__ = [
    "BREACH_MARGIN",
    "TRACE_OFFSET",
    "AnnulusPair",
    "AnnulusReport",
    "BarycenterResult",
    "BoundaryMap",
    "CaseExtrema",
    "CircleMap",
    "ExtensionGrid",
    "MonotonicityError",
    "QCError",
    "QSReport",
    "QuasiconformalityBreach",
    "SeamError",
    "SolverDivergence",
    "annulus_moduli",
    "annulus_pair",
    "beltrami_log_polar",
    "check_quasiconformality",
    "covering_map",
    "douady_earle",
    "douady_earle_many",
    "build_boundary_map",
    "extend_equivariant",
    "extend_points",
    "fundamental_grid",
    "identity_map",
    "power_map",
    "qs_constants",
    "qs_ratio",
    "scaling_residual",
    "solve_barycenters",
    "tail_bound",
    "uniform_nodes",
]
