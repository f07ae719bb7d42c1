"""Douady-Earle extension of an equivariant boundary map to the upper half-plane.

Harmonic measure seen from z = u + iy is sampled at u + y·x_j, where x_j
are the images of uniform circle nodes under the inverse Cayley map. These
nodes scale with z, so the computed extension satisfies E(kz) = κE(z) up to
the solver tolerance. The barycenter is solved in the disk after the
Cayley transfer.
"""

import logging
import math

import numpy as np
import numpy.typing as npt

from schottkit.moebius import CAYLEY, CAYLEY_INVERSE
from schottkit.qc.barycenter import (
    DEFAULT_MAX_ITER,
    DEFAULT_NODES,
    DEFAULT_TOL,
    MIN_NODES,
    map_chunks,
    raise_on_divergence,
    solve_barycenters,
)
from schottkit.qc.boundary import BoundaryMap
from schottkit.qc.models import ExtensionGrid, QuasiconformalityBreach

logger = logging.getLogger(__name__)

BREACH_MARGIN = 1e-6
DEFAULT_GRID = 32

_C = npt.NDArray[np.complex128]
_R = npt.NDArray[np.float64]


def line_offsets(nodes: int) -> _R:
    """-cot(θ_j/2): uniform circle nodes carried to the real line."""
    theta = (np.arange(nodes) + 0.5) * (2 * math.pi / nodes)
    return -1.0 / np.tan(theta / 2)


def extend_points(
    psi: BoundaryMap,
    zs: npt.ArrayLike,
    nodes: int = DEFAULT_NODES,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
    workers: int = 1,
    min_nodes: int = MIN_NODES,
) -> tuple[_C, _R]:
    """E(Ψ) at points of the upper half-plane; returns (values, residuals).

    Raises:
        ValueError: If a point has Im z <= 0 or nodes < min_nodes
        SolverDivergence: If some barycenter misses the tolerance
    """
    points = np.atleast_1d(np.asarray(zs, dtype=complex)).ravel()
    if np.any(points.imag <= 0):
        raise ValueError("Extension points must lie in the upper half-plane")
    if nodes < min_nodes:
        raise ValueError(f"Need at least {min_nodes} quadrature nodes, got {nodes}")
    offsets = line_offsets(nodes)

    def block(z: _C) -> tuple[_C, _R, npt.NDArray[np.int64], list[str]]:
        xs = z.real[:, None] + z.imag[:, None] * offsets[None, :]
        images = CAYLEY.apply_array(psi.evaluate(xs).astype(complex))
        # Start from the Cayley image of Ψ(u) + i·(half the image of [u - y, u + y]).
        lo, mid, hi = (psi.evaluate(z.real + c * z.imag) for c in (-1.0, 0.0, 1.0))
        guess = CAYLEY.apply_array(mid + 0.5j * (hi - lo))
        return solve_barycenters(images, guess, tol, max_iter)

    w, res, iterations, methods = map_chunks(block, points, workers)
    raise_on_divergence(points, res, iterations, tol)
    if "newton" in methods:
        logger.debug(f"{methods.count('newton')} of {points.size} points needed Newton polishing")
    return CAYLEY_INVERSE.apply_array(w), res


def beltrami_log_polar(values: _C, s: _R, theta: _R, k: float, kappa: float) -> _C:
    """Beltrami coefficient of E from samples on the grid z = exp(s + iθ).

    F = log E is differentiated in the log-polar variable ζ = s + iθ. In s,
    F - (log κ / log k)·s is periodic with period log k, so centered
    differences wrap around. In θ, np.gradient is second order inside and
    one-sided on the first and last rows.
    """
    F = np.log(values)
    slope = math.log(kappa) / math.log(k)
    G = F - slope * s[None, :]
    h = s[1] - s[0]
    F_s = (np.roll(G, -1, axis=1) - np.roll(G, 1, axis=1)) / (2 * h) + slope
    F_t = np.gradient(F, theta, axis=0, edge_order=2)
    d_zeta = (F_s - 1j * F_t) / 2
    d_zbar = (F_s + 1j * F_t) / 2
    z = np.exp(s[None, :] + 1j * theta[:, None])
    # μ_E(z) = μ_F(ζ)·z / conj(z)
    return (d_zbar / d_zeta) * z / np.conj(z)


def check_quasiconformality(mu: npt.ArrayLike, margin: float = BREACH_MARGIN, strict: bool = False) -> bool:
    """Flag |μ| >= 1 - margin; raise instead in strict mode.

    Raises:
        QuasiconformalityBreach: If ``strict`` and the threshold is reached
    """
    sup_mu = float(np.max(np.abs(np.asarray(mu))))
    if sup_mu < 1 - margin:
        return False
    if strict:
        raise QuasiconformalityBreach(sup_mu, margin)
    logger.warning(f"Quasiconformality breach: sup |μ| = {sup_mu:.8f} >= 1 - {margin}")
    return True


def fundamental_grid(k: float, grid: int) -> tuple[_R, _R, _C]:
    """Cell grid (s_i, θ_j) covering 1 <= |z| < k in the upper half-plane."""
    if grid < 4:
        raise ValueError(f"Extension grid needs at least 4 cells per side, got {grid}")
    s = np.arange(grid) * (math.log(k) / grid)
    theta = (np.arange(grid) + 0.5) * (math.pi / grid)
    z = np.exp(s[None, :] + 1j * theta[:, None])
    return s, theta, z


def extend_equivariant(
    psi: BoundaryMap,
    grid: int = DEFAULT_GRID,
    tol: float = DEFAULT_TOL,
    nodes: int = DEFAULT_NODES,
    max_iter: int = DEFAULT_MAX_ITER,
    breach_margin: float = BREACH_MARGIN,
    strict: bool = False,
    workers: int = 1,
) -> ExtensionGrid:
    """Sample E(Ψ) on a fundamental region of z ↦ kz with its dilatation.

    Args:
        psi: Equivariant boundary map
        grid: Cells per side of the (s, θ) grid
        tol: Barycenter residual tolerance
        nodes: Quadrature nodes per point
        max_iter: Fixed-point iteration cap
        breach_margin: |μ| >= 1 - margin is flagged as a breach
        strict: Raise QuasiconformalityBreach instead of flagging
        workers: Threads for the per-point solves

    Returns:
        ExtensionGrid; ``equivariance_residual`` compares E(kz) and κE(z),
        both solved directly

    Raises:
        SolverDivergence: If a barycenter misses the tolerance
        QuasiconformalityBreach: In strict mode only
    """
    s, theta, z = fundamental_grid(psi.k, grid)
    values, residuals = extend_points(psi, z, nodes, tol, max_iter, workers)
    shifted, shifted_res = extend_points(psi, psi.k * z, nodes, tol, max_iter, workers)
    values = values.reshape(z.shape)
    equivariance = float(np.max(np.abs(shifted - psi.kappa * values.ravel())))

    mu = beltrami_log_polar(values, s, theta, psi.k, psi.kappa)
    breach = check_quasiconformality(mu, breach_margin, strict)

    result = ExtensionGrid(
        k=psi.k,
        kappa=psi.kappa,
        s=s,
        theta=theta,
        z=z,
        values=values,
        mu=mu,
        residuals=np.maximum(residuals, shifted_res).reshape(z.shape),
        equivariance_residual=equivariance,
        breach=breach,
        nodes=nodes,
    )
    if result.unreliable.any():
        logger.warning(
            f"{int(result.unreliable.sum())} cells of {psi.label} have a finite-difference |μ| >= 1"
        )
    logger.info(
        f"Extension of {psi.label} on {grid}x{grid}: sup K={result.sup_K:.6g}, "
        f"equivariance residual {equivariance:.3e}"
    )
    return result


__all__ = [
    "BREACH_MARGIN",
    "DEFAULT_GRID",
    "beltrami_log_polar",
    "check_quasiconformality",
    "extend_equivariant",
    "extend_points",
    "fundamental_grid",
    "line_offsets",
]
