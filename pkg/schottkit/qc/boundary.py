"""Multiplicatively equivariant homeomorphisms of the real line.

A ``BoundaryMap`` is fixed by its values on the fundamental intervals
[1, k] and [-k, -1]; everywhere else it is defined by Ψ(kx) = κΨ(x) and
Ψ(0) = 0, so equivariance holds by construction.
"""

import logging
import math
from collections.abc import Callable
from dataclasses import dataclass, field
from typing import Any

import numpy as np
import numpy.typing as npt
from scipy.interpolate import PchipInterpolator

from schottkit.qc.models import CaseExtrema, MonotonicityError, QSReport, SeamError

logger = logging.getLogger(__name__)

SEAM_TOL = 1e-12
CASE_IV_SLACK = 1e-9
MIN_GRID = 64

_Arr = npt.NDArray[np.float64]
Branch = Callable[[_Arr], _Arr]


@dataclass
class BoundaryMap:
    """Increasing Ψ: ℝ → ℝ with Ψ(kx) = κΨ(x), normalized by Ψ(±1) = ±1.

    ``positive`` is Ψ on [1, k] and ``negative`` is Ψ on [-k, -1].
    """

    k: float
    kappa: float
    positive: Branch
    negative: Branch
    label: str = "custom"
    _log_k: float = field(init=False, repr=False)

    def __post_init__(self) -> None:
        if not self.k > 1 or not self.kappa > 1:
            raise ValueError(f"Multipliers must exceed 1, got k={self.k}, κ={self.kappa}")
        self._log_k = math.log(self.k)

    @property
    def alpha(self) -> float:
        """Exponent log κ / log k of the matching power map."""
        return math.log(self.kappa) / self._log_k

    def evaluate(self, x: npt.ArrayLike) -> _Arr:
        x = np.asarray(x, dtype=float)
        out = np.zeros_like(x)
        ax = np.abs(x)
        nz = ax > 0
        if not nz.any():
            return out

        n = np.floor(np.log(ax[nz]) / self._log_k)
        y = ax[nz] / self.k**n
        # log/floor can land one fundamental interval off near the seam
        low = y < 1.0
        n[low] -= 1
        high = y > self.k
        n[high] += 1
        y = np.clip(ax[nz] / self.k**n, 1.0, self.k)

        vals = np.empty_like(y)
        pos = x[nz] > 0
        if pos.any():
            vals[pos] = self.positive(y[pos])
        if (~pos).any():
            vals[~pos] = self.negative(-y[~pos])
        out[nz] = self.kappa**n * vals
        return out

    def __call__(self, x: float) -> float:
        return float(self.evaluate(np.array([x]))[0])

    def equivariance_residual(self, x: npt.ArrayLike) -> float:
        """max |Ψ(kx) - κΨ(x)| relative to max(1, |κΨ(x)|)."""
        x = np.asarray(x, dtype=float)
        target = self.kappa * self.evaluate(x)
        diff = np.abs(self.evaluate(self.k * x) - target)
        return float((diff / np.maximum(1.0, np.abs(target))).max(initial=0.0))

    def reflected(self) -> "BoundaryMap":
        """x ↦ -Ψ(-x), the same map seen from the other end of the line."""
        pos, neg = self.positive, self.negative
        return BoundaryMap(
            self.k,
            self.kappa,
            positive=lambda y: -neg(-y),
            negative=lambda y: -pos(-y),
            label=f"reflected({self.label})",
        )

    def to_json(self) -> dict[str, Any]:
        return {"k": self.k, "kappa": self.kappa, "alpha": self.alpha, "label": self.label}


def _check_strict(ys: _Arr, xs: _Arr, side: str) -> None:
    steps = np.diff(ys)
    if not np.all(steps > 0):
        bad = int(np.argmin(steps))
        raise MonotonicityError(
            f"Samples on the {side} branch are not strictly increasing near x={xs[bad]:.6g}",
            position=float(xs[bad]),
        )


def _check_seam(value: float, expected: float, side: str, seam_tol: float) -> None:
    if abs(value - expected) > seam_tol * abs(expected):
        raise SeamError(side, value, expected)


def _sampled_branch(xs: npt.ArrayLike, ys: npt.ArrayLike, side: str) -> tuple[_Arr, _Arr]:
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    if xs.shape != ys.shape or xs.ndim != 1 or xs.size < 2:
        raise ValueError(f"{side} samples need matching 1-d arrays of length >= 2")
    if not np.all(np.diff(xs) > 0):
        raise MonotonicityError(f"Sample abscissae on the {side} branch must increase")
    _check_strict(ys, xs, side)
    return xs, ys


def _formula_branches(
    formula: Callable[[_Arr], _Arr], k: float, check_nodes: int
) -> tuple[Branch, Branch]:
    scale_pos = float(formula(np.array([1.0]))[0])
    scale_neg = -float(formula(np.array([-1.0]))[0])
    if not scale_pos > 0 or not scale_neg > 0:
        raise MonotonicityError("Formula must send 1 to a positive and -1 to a negative value")

    def pos_branch(y: _Arr) -> _Arr:
        return formula(y) / scale_pos

    def neg_branch(y: _Arr) -> _Arr:
        return formula(y) / scale_neg

    grid = np.linspace(1.0, k, check_nodes)
    _check_strict(pos_branch(grid), grid, "positive")
    _check_strict(neg_branch(-grid[::-1]), -grid[::-1], "negative")
    return pos_branch, neg_branch


def _sampled_branches(
    k: float,
    positive: tuple[npt.ArrayLike, npt.ArrayLike],
    negative: tuple[npt.ArrayLike, npt.ArrayLike] | None,
) -> tuple[Branch, Branch]:
    px, py = _sampled_branch(*positive, side="positive")
    if abs(px[0] - 1.0) > 1e-12 or abs(px[-1] - k) > 1e-12 * k:
        raise ValueError(f"Positive samples must span [1, {k}], got [{px[0]}, {px[-1]}]")
    if not py[0] > 0:
        raise MonotonicityError("Ψ(1) must be positive", position=1.0)
    py = py / py[0]
    if negative is None:
        nx, ny = -px[::-1], -py[::-1]
    else:
        nx, ny = _sampled_branch(*negative, side="negative")
        if abs(nx[-1] + 1.0) > 1e-12 or abs(nx[0] + k) > 1e-12 * k:
            raise ValueError(f"Negative samples must span [-{k}, -1], got [{nx[0]}, {nx[-1]}]")
        if not ny[-1] < 0:
            raise MonotonicityError("Ψ(-1) must be negative", position=-1.0)
        ny = ny / -ny[-1]
    pos_interp = PchipInterpolator(px, py, extrapolate=True)
    neg_interp = PchipInterpolator(nx, ny, extrapolate=True)
    return (
        lambda y: np.asarray(pos_interp(y), dtype=float),
        lambda y: np.asarray(neg_interp(y), dtype=float),
    )


def build_boundary_map(
    k: float,
    kappa: float,
    positive: tuple[npt.ArrayLike, npt.ArrayLike] | None = None,
    negative: tuple[npt.ArrayLike, npt.ArrayLike] | None = None,
    formula: Callable[[_Arr], _Arr] | None = None,
    seam_tol: float = SEAM_TOL,
    check_nodes: int = 256,
    label: str | None = None,
) -> BoundaryMap:
    """Build an equivariant boundary map from samples or from a formula.

    Samples are interpolated by monotone cubics. ``positive`` must span
    [1, k]; ``negative`` must span [-k, -1] and defaults to the odd
    reflection of the positive branch. A formula only needs to be valid on
    the fundamental intervals. Values are rescaled so that Ψ(±1) = ±1.

    Raises:
        ValueError: If k, κ <= 1 or the inputs are malformed
        MonotonicityError: If a branch is not strictly increasing
        SeamError: If Ψ(±k) differs from ±κ by more than ``seam_tol`` (relative)
    """
    if not k > 1 or not kappa > 1:
        raise ValueError(f"Multipliers must exceed 1, got k={k}, κ={kappa}")
    if formula is not None and positive is None:
        pos_branch, neg_branch = _formula_branches(formula, k, check_nodes)
        name = label or "formula"
    elif positive is not None and formula is None:
        pos_branch, neg_branch = _sampled_branches(k, positive, negative)
        name = label or "samples"
    else:
        raise ValueError("Give either boundary samples or a formula")

    end = np.array([k])
    _check_seam(float(pos_branch(end)[0]), kappa, "positive", seam_tol)
    _check_seam(float(neg_branch(-end)[0]), -kappa, "negative", seam_tol)

    logger.debug(f"Boundary map {name}: k={k}, κ={kappa}")
    return BoundaryMap(k, kappa, pos_branch, neg_branch, label=name)


def power_map(alpha: float, k: float) -> BoundaryMap:
    """Ψ(x) = sign(x)|x|^α with κ = k^α."""
    if not alpha > 0:
        raise ValueError(f"alpha must be positive, got {alpha}")
    return build_boundary_map(
        k,
        k**alpha,
        formula=lambda x: np.sign(x) * np.abs(x) ** alpha,
        label=f"power({alpha:g})",
    )


def identity_map(k: float) -> BoundaryMap:
    return power_map(1.0, k)


def qs_ratio(psi: BoundaryMap, x: npt.ArrayLike, t: npt.ArrayLike) -> Any:
    """ρ(x, t) = (Ψ(x) - Ψ(x - t)) / (Ψ(x + t) - Ψ(x)); vectorized over x and t.

    Raises:
        ValueError: If some t <= 0
    """
    x_arr, t_arr = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(t, dtype=float))
    if np.any(t_arr <= 0):
        raise ValueError("t must be positive")
    fx = psi.evaluate(x_arr)
    ratio = (fx - psi.evaluate(x_arr - t_arr)) / (psi.evaluate(x_arr + t_arr) - fx)
    if ratio.ndim == 0:
        return float(ratio)
    return ratio


def tail_bound(kappa: float, m: int) -> float | None:
    """Upper bound on ρ(x, t) for x ∈ [1, k] and t >= k^m; None when m < 2."""
    if m < 2:
        return None
    return (1 + kappa**m) / (kappa ** (m - 1) - 1)


def scaling_residual(psi: BoundaryMap, pairs: int = 1000, seed: int = 0) -> float:
    """max relative |ρ(kx, kt) - ρ(x, t)| over random pairs."""
    rng = np.random.default_rng(seed)
    x = rng.uniform(-psi.k, psi.k, pairs)
    t = rng.uniform(0.25, psi.k, pairs)
    base = qs_ratio(psi, x, t)
    scaled = qs_ratio(psi, psi.k * x, psi.k * t)
    return float(np.max(np.abs(scaled - base) / base))


def _extrema(values: _Arr) -> CaseExtrema:
    if values.size == 0:
        return CaseExtrema(sup=math.nan, inf=math.nan, samples=0)
    return CaseExtrema(sup=float(values.max()), inf=float(values.min()), samples=int(values.size))


def qs_constants(
    psi: BoundaryMap,
    x_nodes: int = 512,
    t_nodes: int = 2048,
    t_exponent: int = 6,
    residual_pairs: int = 1000,
) -> QSReport:
    """Estimate the quasi-symmetry constants of Ψ on the fundamental set.

    x runs over {0} ∪ [1, k] ∪ [-k, -1] and t over a log-spaced grid on
    [k^-m, k^m]. By ρ(kx, kt) = ρ(x, t) this covers every x; t beyond the
    grid is handled by the tail bound. The scan is split into
    (i) t <= 1/2, (ii) 1/2 < t < |x|, (iii) t >= |x| and (iv) x = 0.

    Args:
        psi: Boundary map
        x_nodes: Nodes on each fundamental interval (>= 64)
        t_nodes: Nodes of the t-grid (>= 64)
        t_exponent: m in [k^-m, k^m]
        residual_pairs: Random pairs used to check the scaling identity

    Returns:
        QSReport; M_hat and m_hat are lower/upper estimates of the true sup/inf
    """
    if x_nodes < MIN_GRID or t_nodes < MIN_GRID:
        raise ValueError(f"Grid resolution must be >= {MIN_GRID} per dimension")
    if t_exponent < 1:
        raise ValueError(f"t_exponent must be >= 1, got {t_exponent}")

    k, kappa = psi.k, psi.kappa
    side = np.linspace(1.0, k, x_nodes)
    xs = np.concatenate([-side[::-1], side])
    ts = np.logspace(-t_exponent, t_exponent, t_nodes, base=k)

    X, T = np.meshgrid(xs, ts, indexing="ij")
    rho = qs_ratio(psi, X, T)
    ax = np.abs(X)
    cases = {
        "i": _extrema(rho[T <= 0.5]),
        "ii": _extrema(rho[(T > 0.5) & (T < ax)]),
        "iii": _extrema(rho[T >= ax]),
    }

    rho0 = qs_ratio(psi, np.zeros_like(ts), ts)
    cases["iv"] = _extrema(rho0)
    iv_range = (float(rho0.min()), float(rho0.max()))
    iv_ok = bool(iv_range[0] >= 1 / kappa - CASE_IV_SLACK and iv_range[1] <= kappa + CASE_IV_SLACK)
    if not iv_ok:
        logger.warning(f"ρ(0, t) left [1/κ, κ]: range {iv_range}")

    i_max = np.unravel_index(int(np.argmax(rho)), rho.shape)
    i_min = np.unravel_index(int(np.argmin(rho)), rho.shape)
    candidates = [
        (float(rho.max()), (float(X[i_max]), float(T[i_max]))),
        (iv_range[1], (0.0, float(ts[int(np.argmax(rho0))]))),
    ]
    lows = [
        (float(rho.min()), (float(X[i_min]), float(T[i_min]))),
        (iv_range[0], (0.0, float(ts[int(np.argmin(rho0))]))),
    ]
    M_hat, argmax = max(candidates, key=lambda c: c[0])
    m_hat, argmin = min(lows, key=lambda c: c[0])

    report = QSReport(
        k=k,
        kappa=kappa,
        M_hat=M_hat,
        m_hat=m_hat,
        argmax=argmax,
        argmin=argmin,
        cases=cases,
        case_iv_range=iv_range,
        case_iv_ok=iv_ok,
        scaling_residual=scaling_residual(psi, residual_pairs),
        tail_bound=tail_bound(kappa, t_exponent),
        x_nodes=x_nodes,
        t_nodes=t_nodes,
        t_exponent=t_exponent,
    )
    logger.info(f"QS scan of {psi.label}: M̂={M_hat:.6g}, m̂={m_hat:.6g}")
    return report


__all__ = [
    "CASE_IV_SLACK",
    "MIN_GRID",
    "SEAM_TOL",
    "BoundaryMap",
    "build_boundary_map",
    "identity_map",
    "power_map",
    "qs_constants",
    "qs_ratio",
    "scaling_residual",
    "tail_bound",
]
