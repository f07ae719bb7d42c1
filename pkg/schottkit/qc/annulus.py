"""Round annuli as quotients H/<z ↦ kz> and the projected annulus map.

The covering H → {1 < |w| < r} is w = exp(-2πi·log z / log k), with
log r · log k = 2π². The positive real axis goes to |w| = 1 and the
negative one to |w| = r.
"""

import logging
import math

import numpy as np
import numpy.typing as npt

from schottkit.qc.barycenter import DEFAULT_MAX_ITER, DEFAULT_NODES, DEFAULT_TOL
from schottkit.qc.boundary import BoundaryMap
from schottkit.qc.extension import DEFAULT_GRID, extend_equivariant, extend_points
from schottkit.qc.models import MODULUS_CONSTANT, AnnulusPair, AnnulusReport

logger = logging.getLogger(__name__)

TRACE_OFFSET = 1e-5
TRACE_TOL = 1e-8
_MAX_EXPONENT = 700.0


def annulus_moduli(value: float) -> float:
    """The paired parameter: r for a multiplier k, or k for a radius r.

    log r · log k = 2π², so the map is an involution on (1, ∞).

    Raises:
        ValueError: If value <= 1 or the partner overflows a float
    """
    if not value > 1:
        raise ValueError(f"Annulus parameter must exceed 1, got {value}")
    exponent = MODULUS_CONSTANT / math.log(value)
    if exponent > _MAX_EXPONENT:
        raise ValueError(f"Parameter {value} is too close to 1: partner exp({exponent:.1f}) overflows")
    return math.exp(exponent)


def annulus_pair(k: float, kappa: float) -> AnnulusPair:
    """A = H/<z↦kz> and B = H/<z↦κz> with their round radii."""
    return AnnulusPair(r=annulus_moduli(k), k=k, rho=annulus_moduli(kappa), kappa=kappa)


def covering_map(z: npt.ArrayLike, k: float) -> npt.NDArray[np.complex128]:
    """Projection of the upper half-plane onto 1 < |w| < r."""
    return np.exp(-2j * math.pi * np.log(np.asarray(z, dtype=complex)) / math.log(k))


def _trace_error(psi: BoundaryMap, s: npt.NDArray[np.float64], angle: float, values: npt.NDArray[np.complex128]) -> float:
    # lifted boundary coordinate, in turns of the target annulus
    x = np.exp(s) * (1.0 if angle < math.pi / 2 else -1.0)
    expected = np.log(np.abs(psi.evaluate(x)))
    return float(np.max(np.abs(np.log(np.abs(values)) - expected)) / math.log(psi.kappa))


def glue_annulus_map(
    psi: BoundaryMap,
    pair: AnnulusPair,
    grid: int = DEFAULT_GRID,
    tol: float = DEFAULT_TOL,
    nodes: int = DEFAULT_NODES,
    max_iter: int = DEFAULT_MAX_ITER,
    side_dilatations: tuple[float, float] = (1.0, 1.0),
    trace_offset: float = TRACE_OFFSET,
    workers: int = 1,
) -> AnnulusReport:
    """Project E(Ψ) to a map A → B and measure it.

    Boundary traces are compared at angle ``trace_offset`` from each
    boundary ray, in the lifted coordinate log|·| / log κ.

    Args:
        psi: Boundary map equivariant with the pair's (k, κ)
        pair: Annuli A and B
        grid: Cells per side of the fundamental grid
        tol: Barycenter tolerance for the grid points
        nodes: Quadrature nodes per point
        max_iter: Fixed-point iteration cap
        side_dilatations: Dilatations K_1, K_2 of the maps on either side
        trace_offset: Angular distance of the trace samples from the real axis
        workers: Threads for the per-point solves

    Returns:
        AnnulusReport with dilatation bound max(K_1, K_2, sup K)

    Raises:
        ValueError: If Ψ's multipliers do not match the pair
        SolverDivergence: Propagated from the extension
    """
    if not math.isclose(psi.k, pair.k, rel_tol=1e-12) or not math.isclose(
        psi.kappa, pair.kappa, rel_tol=1e-12
    ):
        raise ValueError(
            f"Boundary map multipliers ({psi.k}, {psi.kappa}) do not match the pair "
            f"({pair.k}, {pair.kappa})"
        )
    if min(side_dilatations) < 1:
        raise ValueError(f"Dilatations are >= 1, got {side_dilatations}")

    ext = extend_equivariant(psi, grid=grid, tol=tol, nodes=nodes, max_iter=max_iter, workers=workers)
    annulus_points = covering_map(ext.z, pair.k)
    image_points = covering_map(ext.values, pair.kappa)

    # Near the axis the residual is measured at a scale ~trace_offset, so a looser tolerance suffices.
    trace_tol = max(tol, TRACE_TOL)
    errors = []
    for angle in (trace_offset, math.pi - trace_offset):
        z = np.exp(ext.s + 1j * angle)
        values, _ = extend_points(psi, z, nodes, trace_tol, max_iter, workers)
        errors.append(_trace_error(psi, ext.s, angle, values))

    bound = max(side_dilatations[0], side_dilatations[1], ext.sup_K)
    report = AnnulusReport(
        pair=pair,
        sup_K=ext.sup_K,
        sup_mu=ext.sup_mu,
        side_dilatations=side_dilatations,
        dilatation_bound=bound,
        trace_error_inner=errors[0],
        trace_error_outer=errors[1],
        equivariance_residual=ext.equivariance_residual,
        annulus_points=annulus_points,
        image_points=image_points,
        grid=(grid, grid),
    )
    logger.info(
        f"Annulus map r={pair.r:.6g} -> ρ={pair.rho:.6g}: sup K={ext.sup_K:.6g}, "
        f"trace error {report.trace_error:.3e}"
    )
    return report


__all__ = [
    "TRACE_OFFSET",
    "annulus_moduli",
    "annulus_pair",
    "covering_map",
    "glue_annulus_map",
]
