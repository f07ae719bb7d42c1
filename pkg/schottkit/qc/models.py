"""Errors and result records for boundary maps and their extensions."""

import math
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from schottkit.errors import ToolkitError

MODULUS_CONSTANT = 2 * math.pi**2


class QCError(ToolkitError):
    """Base exception for quasiconformal constructions."""

    pass


class MonotonicityError(QCError):
    """Raised when boundary samples are not strictly increasing."""

    def __init__(self, message: str, position: float | None = None) -> None:
        super().__init__(message)
        self.position = position


class SeamError(QCError):
    """Raised when Ψ(±k) differs from ±κ beyond the seam tolerance."""

    def __init__(self, side: str, value: float, expected: float) -> None:
        super().__init__(
            f"Seam mismatch on the {side} branch: Ψ(end) = {value!r}, expected {expected!r}"
        )
        self.side = side
        self.value = value
        self.expected = expected


class SolverDivergence(QCError):
    """Raised when the barycenter iteration does not reach the tolerance."""

    def __init__(self, point: complex, residual: float, iterations: int) -> None:
        super().__init__(
            f"Barycenter at {point} did not converge: residual {residual:.3e} "
            f"after {iterations} iterations"
        )
        self.point = point
        self.residual = residual
        self.iterations = iterations


class QuasiconformalityBreach(QCError):
    """Raised in strict mode when |μ| reaches 1 - margin on the grid."""

    def __init__(self, sup_mu: float, margin: float) -> None:
        super().__init__(f"sup |μ| = {sup_mu:.6f} reaches the breach threshold 1 - {margin}")
        self.sup_mu = sup_mu
        self.margin = margin


@dataclass(frozen=True)
class CaseExtrema:
    """Sampled sup/inf of ρ over one region of the (x, t) scan."""

    sup: float
    inf: float
    samples: int

    def to_json(self) -> dict[str, Any]:
        return {"sup": self.sup, "inf": self.inf, "samples": self.samples}


@dataclass
class QSReport:
    """Estimated quasi-symmetry constants of an equivariant boundary map.

    ``M_hat`` and ``m_hat`` come from a finite scan and bound the true
    constants from the inside. ``tail_bound`` is a rigorous upper bound for
    ratios with t beyond the scanned range.
    """

    k: float
    kappa: float
    M_hat: float
    m_hat: float
    argmax: tuple[float, float]
    argmin: tuple[float, float]
    cases: dict[str, CaseExtrema]
    case_iv_range: tuple[float, float]
    case_iv_ok: bool
    scaling_residual: float
    tail_bound: float | None
    x_nodes: int
    t_nodes: int
    t_exponent: int
    lower_bound_semantics: bool = True

    def to_json(self) -> dict[str, Any]:
        return {
            "k": self.k,
            "kappa": self.kappa,
            "M_hat": self.M_hat,
            "m_hat": self.m_hat,
            "argmax": list(self.argmax),
            "argmin": list(self.argmin),
            "cases": {name: c.to_json() for name, c in sorted(self.cases.items())},
            "case_iv_range": list(self.case_iv_range),
            "case_iv_ok": self.case_iv_ok,
            "scaling_residual": self.scaling_residual,
            "tail_bound": self.tail_bound,
            "grid": {
                "x_nodes": self.x_nodes,
                "t_nodes": self.t_nodes,
                "t_exponent": self.t_exponent,
            },
            "lower_bound_semantics": self.lower_bound_semantics,
        }


@dataclass(frozen=True)
class BarycenterResult:
    """Conformal barycenter w with the residual of its defining equation."""

    point: complex
    value: complex
    residual: float
    iterations: int
    method: str

    def __complex__(self) -> complex:
        return self.value


@dataclass
class ExtensionGrid:
    """Extension of Ψ sampled on the fundamental region 1 <= |z| < k of z ↦ kz.

    Arrays have shape (n_theta, n_s); row j is the ray at angle θ_j and
    column i the circle |z| = exp(s_i).
    """

    k: float
    kappa: float
    s: np.ndarray
    theta: np.ndarray
    z: np.ndarray
    values: np.ndarray
    mu: np.ndarray
    residuals: np.ndarray
    equivariance_residual: float
    breach: bool
    nodes: int
    edge_rows: tuple[int, ...] = field(default=(0, -1))

    @property
    def abs_mu(self) -> np.ndarray:
        return np.abs(self.mu)

    @property
    def dilatation(self) -> np.ndarray:
        m = np.minimum(self.abs_mu, 1.0 - 1e-15)
        return (1 + m) / (1 - m)

    @property
    def unreliable(self) -> np.ndarray:
        """Cells where the finite-difference |μ| reached 1; K there is clamped, not measured."""
        return self.abs_mu >= 1.0

    @property
    def sup_mu(self) -> float:
        return float(self.abs_mu.max())

    @property
    def sup_K(self) -> float:
        return float(self.dilatation.max())

    @property
    def max_residual(self) -> float:
        return float(self.residuals.max())

    def to_records(self) -> dict[str, np.ndarray]:
        """Flat columns x, y, Re E, Im E, |μ|, K for tabular export."""
        return {
            "x": self.z.real.ravel(),
            "y": self.z.imag.ravel(),
            "re_E": self.values.real.ravel(),
            "im_E": self.values.imag.ravel(),
            "abs_mu": self.abs_mu.ravel(),
            "K": self.dilatation.ravel(),
        }

    def to_json(self) -> dict[str, Any]:
        return {
            "k": self.k,
            "kappa": self.kappa,
            "grid": [int(self.theta.size), int(self.s.size)],
            "nodes": self.nodes,
            "sup_mu": self.sup_mu,
            "sup_K": self.sup_K,
            "max_residual": self.max_residual,
            "equivariance_residual": self.equivariance_residual,
            "breach": self.breach,
            "unreliable_cells": int(self.unreliable.sum()),
            "edge_rows_one_sided": list(self.edge_rows),
        }


@dataclass(frozen=True)
class AnnulusPair:
    """Round annuli 1<|z|<r and 1<|z|<ρ covered by H/<z↦kz> and H/<z↦κz>."""

    r: float
    k: float
    rho: float
    kappa: float

    def __post_init__(self) -> None:
        for name in ("r", "k", "rho", "kappa"):
            value = getattr(self, name)
            if not value > 1:
                raise ValueError(f"{name} must be > 1, got {value}")
        for a, b in ((self.r, self.k), (self.rho, self.kappa)):
            if abs(math.log(a) * math.log(b) - MODULUS_CONSTANT) > 1e-10 * MODULUS_CONSTANT:
                raise ValueError(f"log {a} · log {b} != 2π²")

    def to_json(self) -> dict[str, float]:
        return {"r": self.r, "k": self.k, "rho": self.rho, "kappa": self.kappa}


@dataclass
class AnnulusReport:
    """Projected annulus map A → B with its dilatation and boundary traces."""

    pair: AnnulusPair
    sup_K: float
    sup_mu: float
    side_dilatations: tuple[float, float]
    dilatation_bound: float
    trace_error_inner: float
    trace_error_outer: float
    equivariance_residual: float
    annulus_points: np.ndarray
    image_points: np.ndarray
    grid: tuple[int, int]

    @property
    def trace_error(self) -> float:
        return max(self.trace_error_inner, self.trace_error_outer)

    def to_json(self) -> dict[str, Any]:
        return {
            "pair": self.pair.to_json(),
            "sup_K": self.sup_K,
            "sup_mu": self.sup_mu,
            "side_dilatations": list(self.side_dilatations),
            "dilatation_bound": self.dilatation_bound,
            "trace_error_inner": self.trace_error_inner,
            "trace_error_outer": self.trace_error_outer,
            "equivariance_residual": self.equivariance_residual,
            "grid": list(self.grid),
        }
