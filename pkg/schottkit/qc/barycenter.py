"""Conformal barycenters and the Douady-Earle extension in the unit disk.

For a circle homeomorphism φ and z in the disk, E(φ)(z) is the unique w with

    ∫ (φ(ζ) - w) / (1 - conj(w) φ(ζ)) dω_z(ζ) = 0,

ω_z being harmonic measure seen from z. The integral is a trapezoidal sum
over uniform nodes carried to ω_z by the disk automorphism sending 0 to z.
"""

import logging
import math
from collections.abc import Callable
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
import numpy.typing as npt
from scipy.interpolate import PchipInterpolator
from scipy.optimize import root

from schottkit.moebius import MoebiusMap
from schottkit.qc.models import BarycenterResult, MonotonicityError, SolverDivergence

logger = logging.getLogger(__name__)

DEFAULT_NODES = 1024
MIN_NODES = 256
DEFAULT_TOL = 1e-10
DEFAULT_MAX_ITER = 200
CHUNK = 256

_C = npt.NDArray[np.complex128]
_R = npt.NDArray[np.float64]


def uniform_nodes(n: int) -> _C:
    """exp(iθ_j) with θ_j = (j + 1/2)·2π/n."""
    theta = (np.arange(n) + 0.5) * (2 * math.pi / n)
    return np.exp(1j * theta)


@dataclass(frozen=True)
class CircleMap:
    """Orientation-preserving homeomorphism of the unit circle."""

    func: Callable[[_C], _C]
    label: str = "circle-map"

    def __call__(self, zeta: _C) -> _C:
        return self.func(np.asarray(zeta, dtype=complex))

    @classmethod
    def identity(cls) -> "CircleMap":
        return cls(lambda z: z, "identity")

    @classmethod
    def from_moebius(cls, g: MoebiusMap, label: str = "moebius") -> "CircleMap":
        return cls(g.apply_array, label)

    @classmethod
    def from_angles(cls, f: Callable[[_R], _R], label: str = "angles") -> "CircleMap":
        """Circle map given by a lift θ ↦ f(θ) with f(θ + 2π) = f(θ) + 2π."""
        return cls(lambda z: np.exp(1j * f(np.angle(z))), label)

    @classmethod
    def from_samples(
        cls,
        theta: npt.ArrayLike,
        values: npt.ArrayLike,
        min_samples: int = MIN_NODES,
        label: str = "samples",
    ) -> "CircleMap":
        """Monotone cubic interpolation of sampled angles.

        Args:
            theta: Increasing sample angles inside one period
            values: Image angles; unwrapped into an increasing lift
            min_samples: Required number of samples

        Raises:
            ValueError: On too few or malformed samples
            MonotonicityError: If the lift is not increasing within one turn
        """
        theta = np.asarray(theta, dtype=float)
        values = np.unwrap(np.asarray(values, dtype=float))
        if theta.shape != values.shape or theta.ndim != 1:
            raise ValueError("theta and values must be matching 1-d arrays")
        if theta.size < min_samples:
            raise ValueError(f"Need at least {min_samples} samples, got {theta.size}")
        if not np.all(np.diff(theta) > 0) or theta[-1] - theta[0] >= 2 * math.pi:
            raise ValueError("Sample angles must increase within one period")
        if not np.all(np.diff(values) > 0) or values[-1] - values[0] >= 2 * math.pi:
            raise MonotonicityError("Sampled circle map is not orientation-preserving")

        t_ext = np.append(theta, theta[0] + 2 * math.pi)
        v_ext = np.append(values, values[0] + 2 * math.pi)
        lift = PchipInterpolator(t_ext, v_ext)
        start = theta[0]

        def f(angle: _R) -> _R:
            return np.asarray(lift(np.mod(angle - start, 2 * math.pi) + start), dtype=float)

        return cls.from_angles(f, label)

    def conjugated(self, after: MoebiusMap, before: MoebiusMap) -> "CircleMap":
        """after ∘ φ ∘ before."""
        inner = self.func
        return CircleMap(
            lambda z: after.apply_array(inner(before.apply_array(z))),
            f"conj({self.label})",
        )


def _mean_translate(values: _C, w: _C) -> _C:
    """Mean over each row of (v - w)/(1 - conj(w) v)."""
    wc = w[:, None]
    return np.mean((values - wc) / (1 - np.conj(wc) * values), axis=1)


def _newton_polish(values: _C, start: complex, tol: float) -> tuple[complex, float]:
    row = values[None, :]

    def residual(p: _R) -> list[float]:
        w = complex(p[0], p[1])
        if abs(w) >= 1:
            w = w / abs(w) * (1 - 1e-14)
        v = _mean_translate(row, np.array([w]))[0]
        return [v.real, v.imag]

    sol = root(residual, [start.real, start.imag], method="hybr", options={"xtol": tol * 1e-2})
    w = complex(sol.x[0], sol.x[1])
    if abs(w) >= 1:
        return start, math.inf
    return w, float(abs(_mean_translate(row, np.array([w]))[0]))


def solve_barycenters(
    values: _C,
    start: _C | None = None,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
) -> tuple[_C, _R, npt.NDArray[np.int64], list[str]]:
    """Conformal barycenters of the rows of ``values`` (points on the unit circle).

    A damped fixed-point iteration moves w to T_w^{-1}(λ·v), where v is the
    current mean of T_w(values); λ is halved whenever the residual |v| grows.
    Rows that stall are handed to a two-variable Newton solve.

    Returns:
        (w, residual, iterations, method) per row
    """
    values = np.atleast_2d(np.asarray(values, dtype=complex))
    n = values.shape[0]
    w = np.zeros(n, dtype=complex) if start is None else np.asarray(start, dtype=complex).copy()
    v = _mean_translate(values, w)
    res = np.abs(v)
    lam = np.ones(n)
    iterations = np.zeros(n, dtype=np.int64)

    active = res >= tol
    for _ in range(max_iter):
        if not active.any():
            break
        idx = np.flatnonzero(active)
        step = lam[idx] * v[idx]
        cand = (step + w[idx]) / (1 + np.conj(w[idx]) * step)
        v_c = _mean_translate(values[idx], cand)
        r_c = np.abs(v_c)
        ok = r_c < res[idx]
        acc, rej = idx[ok], idx[~ok]
        w[acc], v[acc], res[acc] = cand[ok], v_c[ok], r_c[ok]
        lam[acc] = np.minimum(1.0, lam[acc] * 1.5)
        lam[rej] *= 0.5
        iterations[idx] += 1
        active = (res >= tol) & (lam > 1e-8)

    methods = ["fixed-point"] * n
    for i in np.flatnonzero(res >= tol):
        logger.debug(f"Fixed point stalled at residual {res[i]:.3e}; switching to Newton")
        wi, ri = _newton_polish(values[i], complex(w[i]), tol)
        if ri < res[i]:
            w[i], res[i] = wi, ri
        methods[int(i)] = "newton"
    return w, res, iterations, methods


def map_chunks(
    fn: Callable[[_C], tuple[_C, _R, npt.NDArray[np.int64], list[str]]],
    points: _C,
    workers: int = 1,
    chunk: int = CHUNK,
) -> tuple[_C, _R, npt.NDArray[np.int64], list[str]]:
    """Apply ``fn`` to consecutive blocks of points, in worker threads if asked."""
    blocks = [points[i : i + chunk] for i in range(0, points.size, chunk)]
    if workers > 1 and len(blocks) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(fn, blocks))
    else:
        results = [fn(b) for b in blocks]
    # Block order is fixed, so results never depend on scheduling.
    return (
        np.concatenate([r[0] for r in results]),
        np.concatenate([r[1] for r in results]),
        np.concatenate([r[2] for r in results]),
        [m for r in results for m in r[3]],
    )


def raise_on_divergence(points: _C, residuals: _R, iterations: npt.NDArray[np.int64], tol: float) -> None:
    bad = np.flatnonzero(~(residuals < tol))
    if bad.size:
        i = int(bad[np.argmax(residuals[bad])])
        raise SolverDivergence(complex(points[i]), float(residuals[i]), int(iterations[i]))


def douady_earle_many(
    phi: CircleMap,
    zs: npt.ArrayLike,
    nodes: int = DEFAULT_NODES,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
    min_nodes: int = MIN_NODES,
    workers: int = 1,
) -> tuple[_C, _R]:
    """E(φ) at many points of the disk; returns (values, residuals).

    Raises:
        ValueError: If a point is outside the open disk or nodes < min_nodes
        SolverDivergence: If some point misses the tolerance
    """
    points = np.atleast_1d(np.asarray(zs, dtype=complex))
    if np.any(np.abs(points) >= 1):
        raise ValueError("Douady-Earle points must lie in the open unit disk")
    if nodes < min_nodes:
        raise ValueError(f"Need at least {min_nodes} quadrature nodes, got {nodes}")
    eta = uniform_nodes(nodes)

    def block(z: _C) -> tuple[_C, _R, npt.NDArray[np.int64], list[str]]:
        zc = z[:, None]
        zeta = (eta[None, :] + zc) / (1 + np.conj(zc) * eta[None, :])
        return solve_barycenters(phi(zeta), None, tol, max_iter)

    w, res, iterations, _ = map_chunks(block, points, workers)
    raise_on_divergence(points, res, iterations, tol)
    return w, res


def douady_earle(
    phi: CircleMap,
    z: complex,
    nodes: int = DEFAULT_NODES,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
    min_nodes: int = MIN_NODES,
) -> BarycenterResult:
    """Douady-Earle extension of φ at one point z of the unit disk.

    Args:
        phi: Orientation-preserving circle homeomorphism
        z: Point with |z| < 1
        nodes: Quadrature nodes (>= min_nodes)
        tol: Required barycenter residual
        max_iter: Fixed-point iteration cap

    Returns:
        BarycenterResult with the value w = E(φ)(z) and its residual

    Raises:
        ValueError: If |z| >= 1 or nodes < min_nodes
        SolverDivergence: If the residual stays above ``tol``
    """
    z = complex(z)
    if abs(z) >= 1:
        raise ValueError(f"Douady-Earle point must lie in the open unit disk, got {z}")
    if nodes < min_nodes:
        raise ValueError(f"Need at least {min_nodes} quadrature nodes, got {nodes}")
    eta = uniform_nodes(nodes)
    zeta = (eta + z) / (1 + z.conjugate() * eta)
    w, res, iterations, methods = solve_barycenters(phi(zeta)[None, :], None, tol, max_iter)
    if not res[0] < tol:
        raise SolverDivergence(z, float(res[0]), int(iterations[0]))
    return BarycenterResult(
        point=z,
        value=complex(w[0]),
        residual=float(res[0]),
        iterations=int(iterations[0]),
        method=methods[0],
    )


__all__ = [
    "DEFAULT_MAX_ITER",
    "DEFAULT_NODES",
    "DEFAULT_TOL",
    "MIN_NODES",
    "CircleMap",
    "douady_earle",
    "douady_earle_many",
    "map_chunks",
    "raise_on_divergence",
    "solve_barycenters",
    "uniform_nodes",
]
