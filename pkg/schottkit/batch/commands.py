"""One handler per subcommand: compute, check, and prepare artifacts.

Handlers never touch the filesystem; the runner writes whatever the
scene asked for once the handler has returned.
"""

import logging
import math
from typing import Any

import numpy as np

from schottkit.batch.models import (
    CheckResult,
    CommandOutput,
    check_at_most,
    check_below,
    check_equal,
    check_finite,
)
from schottkit.cantor import brute_force_min_gap, cantor_circles, graph_isomorphic_to_xinfty, pants_graph
from schottkit.config.schema import (
    AnnulusGlueScene,
    BoundarySpec,
    CantorCirclesScene,
    CantorGraphScene,
    DeExtendScene,
    GroupScene,
    PantsDistanceScene,
    QsScanScene,
    SchottkyExhaustScene,
    SchottkyLimitsetScene,
    SchottkyValidateScene,
    SpectrumObstructScene,
    XinftyBuildScene,
)
from schottkit.config.settings import Settings
from schottkit.moebius import Circle
from schottkit.pants import (
    PantsSpec,
    build_xinfty,
    collar_width,
    factorial_spectra,
    hexagon_distance,
    spectrum_obstruction,
)
from schottkit.qc import (
    BoundaryMap,
    annulus_pair,
    build_boundary_map,
    extend_equivariant,
    glue_annulus_map,
    power_map,
    qs_constants,
)
from schottkit.qc.models import MODULUS_CONSTANT
from schottkit.reporting import (
    CANTOR_VIEW,
    cantor_shapes,
    graph_shapes,
    graph_to_dot,
    limit_set_shapes,
    points_shapes,
    render_ppm,
    render_svg,
)
from schottkit.schottky import (
    SchottkyData,
    SchottkyEngine,
    Validity,
    classical_configuration,
    detect_parabolic_cusp,
    pairing_map,
    tangent_configuration,
    word_count,
)
from schottkit.utils.rational import format_fraction

logger = logging.getLogger(__name__)

SCALING_TOL = 1e-12
EQUIVARIANCE_TOL = 1e-6
TRACE_CHECK_TOL = 1e-6
MODULUS_TOL = 1e-12
# Spectra are built a few curves past n_max so the last checked curve is not at the truncation.
SPECTRUM_MARGIN = 5


def _engine(settings: Settings, tol: float | None = None) -> SchottkyEngine:
    return SchottkyEngine(
        node_budget=settings.schottky.node_budget,
        tol=tol or settings.schottky.overlap_tol,
        workers=settings.runtime.workers,
        parallel_threshold=settings.schottky.parallel_threshold,
    )


def _group(scene: GroupScene, engine: SchottkyEngine, strict: bool) -> SchottkyData:
    if scene.configuration == "classical":
        disks, generators = classical_configuration(scene.genus, scene.spacing, scene.radius)
    elif scene.configuration == "tangent":
        disks, generators = tangent_configuration(scene.genus)
    else:
        assert scene.disks is not None
        disks = [Circle.disk(complex(*d.center), d.radius) for d in scene.disks]
        generators = [pairing_map(disks[2 * i], disks[2 * i + 1]) for i in range(scene.genus)]
    return engine.build(disks, generators, strict=strict)


def run_schottky_validate(scene: SchottkyValidateScene, settings: Settings) -> CommandOutput:
    engine = _engine(settings, scene.tol)
    data = _group(scene, engine, strict=scene.strict)
    diag = data.diagnostics

    payload = data.to_json()
    cusp = detect_parabolic_cusp(data, engine.tol)
    payload["parabolic_cusp"] = None if cusp is None else {
        "generator": cusp[0],
        "fixed_point": cusp[1].to_json(),
    }
    residual = max(diag.pairing_residuals) if diag.pairing_residuals else 0.0
    checks = [
        CheckResult(
            "classification",
            data.validity is not Validity.INVALID,
            data.validity.value,
            "classical or tangent_degenerate",
        ),
        CheckResult("closure_gap", diag.min_gap >= -engine.tol, diag.min_gap, f">= -{engine.tol:g}"),
        check_at_most("pairing_residual", residual, engine.tol),
    ]
    return CommandOutput(payload, checks)


def _tree_view(data: SchottkyData) -> tuple[float, float, float, float]:
    xs = [d.c.real for d in data.disks]
    ys = [d.c.imag for d in data.disks]
    r = max(d.r for d in data.disks)
    pad = 0.1 * (max(xs) - min(xs) + 2 * r)
    return min(xs) - r - pad, min(ys) - r - pad, max(xs) + r + pad, max(ys) + r + pad


def run_schottky_limitset(scene: SchottkyLimitsetScene, settings: Settings) -> CommandOutput:
    engine = _engine(settings)
    data = _group(scene, engine, strict=True)
    tree = engine.limit_set(data, scene.depth, scene.max_radius)

    margins = [level.min_margin for level in tree.levels[1:]]
    ratios = [
        float(np.max(level.radii / prev.radii[level.parent]))
        for prev, level in zip(tree.levels, tree.levels[1:], strict=False)
    ]
    levels = [
        {
            "depth": level.depth,
            "size": level.size,
            "max_radius": float(level.radii.max()),
            "min_radius": float(level.radii.min()),
            "min_margin": level.min_margin,
        }
        for level in tree.levels
    ]
    payload: dict[str, Any] = {
        "genus": tree.genus,
        "max_depth": tree.max_depth,
        "max_radius": tree.max_radius,
        "node_count": tree.node_count,
        "accuracy": tree.accuracy,
        "levels": levels,
    }

    checks = [
        CheckResult(
            "nesting_margin",
            not margins or min(margins) > 0,
            min(margins) if margins else None,
            "> 0",
        ),
        check_below("radius_decay", max(ratios) if ratios else 0.0, 1.0),
    ]
    if scene.max_radius is None:
        expected = sum(word_count(tree.genus, n) for n in range(1, max(1, scene.depth) + 1))
        checks.append(check_equal("node_count", tree.node_count, expected))

    out = CommandOutput(payload, checks)
    if "csv" in scene.formats:
        centers, radii, depths = tree.leaves()
        out.csv = {"x": centers.real, "y": centers.imag, "radius": radii, "depth": depths}

    view = _tree_view(data)
    raster = "ppm" in scene.formats
    if "svg" in scene.formats:
        if tree.node_count > settings.render.svg_node_threshold:
            logger.warning(
                f"{tree.node_count} disks exceed the SVG threshold "
                f"{settings.render.svg_node_threshold}; writing PPM instead"
            )
            raster = True
        else:
            shapes = limit_set_shapes(tree, leaves_only=scene.leaves_only)
            out.svg = render_svg(
                shapes, view, precision=settings.render.precision, title=f"Limit set, genus {tree.genus}"
            )
    if raster:
        levels_used = tree.levels[-1:] if scene.leaves_only else tree.levels
        out.ppm = render_ppm(
            np.concatenate([lvl.centers for lvl in levels_used]),
            np.concatenate([lvl.radii for lvl in levels_used]),
            np.concatenate([np.full(lvl.size, lvl.depth) for lvl in levels_used]),
            view,
            settings.render.ppm_size,
        )
    return out


def run_schottky_exhaust(scene: SchottkyExhaustScene, settings: Settings) -> CommandOutput:
    engine = _engine(settings)
    data = _group(scene, engine, strict=True)
    stats = engine.exhaustion_stats(data, scene.n, with_radii=scene.with_radii)

    g = scene.genus
    copies_closed = [1 + 2 * g * ((2 * g - 1) ** n - 1) // (2 * g - 2) for n in range(scene.n + 1)]
    curves_closed = [2 * g * (2 * g - 1) ** n for n in range(scene.n + 1)]
    checks = [
        check_equal("boundary_curves", stats.boundary_curves, curves_closed),
        check_equal("copies", stats.copies, copies_closed),
    ]
    if scene.with_radii:
        shrink = all(
            a.max_radius is not None and b.max_radius is not None and b.max_radius < a.max_radius
            for a, b in zip(stats.levels, stats.levels[1:], strict=False)
        )
        checks.append(
            CheckResult("radius_decay", shrink, [lvl.max_radius for lvl in stats.levels], "strictly decreasing")
        )

    out = CommandOutput(stats.to_json(), checks)
    if "csv" in scene.formats:
        out.csv = {
            "n": [lvl.n for lvl in stats.levels],
            "boundary_curves": stats.boundary_curves,
            "copies": stats.copies,
            "max_radius": [lvl.max_radius for lvl in stats.levels],
            "min_radius": [lvl.min_radius for lvl in stats.levels],
        }
    return out


def run_cantor_circles(scene: CantorCirclesScene, settings: Settings) -> CommandOutput:
    family = cantor_circles(scene.k, settings.cantor.materialize_budget)
    cert = family.certificate

    payload = cert.to_json()
    payload["circles"] = [c.to_json() for c in family.circles]
    checks = [
        CheckResult("disjoint", cert.disjoint, payload["min_gap"], "min gap > 0 (exact)"),
        CheckResult("containment", cert.containment_ok, len(cert.violations), "no violations"),
        check_equal("circle_count", cert.circle_count, 2 ** (scene.k + 1) - 1),
    ]
    if scene.cross_check and scene.k <= settings.cantor.brute_force_max_level:
        brute, _ = brute_force_min_gap(scene.k)
        checks.append(
            check_equal("brute_force_min_gap", format_fraction(brute), payload["min_gap"])
        )

    out = CommandOutput(payload, checks)
    if "svg" in scene.formats:
        view = (-CANTOR_VIEW, -CANTOR_VIEW, CANTOR_VIEW, CANTOR_VIEW)
        out.svg = render_svg(
            cantor_shapes(family), view, precision=settings.render.precision, title=f"Cantor circles k<={scene.k}"
        )
    if "csv" in scene.formats:
        circles = [c for c in family.circles if not c.is_axis]
        out.csv = {
            "level": [c.level for c in circles],
            "index": [c.index for c in circles],
            "center": [format_fraction(c.center) for c in circles if c.center is not None],
            "radius": [format_fraction(c.radius) for c in circles if c.radius is not None],
        }
    return out


def run_cantor_graph(scene: CantorGraphScene, settings: Settings) -> CommandOutput:
    graph = pants_graph(scene.k)
    result = graph_isomorphic_to_xinfty(graph, scene.k)

    payload = graph.to_json()
    payload["isomorphism"] = result.to_json()
    checks = [
        CheckResult(
            "isomorphic_to_xinfty",
            result.isomorphic,
            len(result.mapping) if result.mapping is not None else result.counterexample,
            "explicit node bijection",
        ),
        check_equal("node_count", graph.node_count, 2 * (2**scene.k - 1)),
    ]
    out = CommandOutput(payload, checks)
    if "dot" in scene.formats:
        out.dot = graph_to_dot(graph.graph, name=f"pants_graph_{scene.k}")
    if "svg" in scene.formats:
        out.svg = render_svg(graph_shapes(graph.graph), precision=settings.render.precision)
    return out


def run_pants_distance(scene: PantsDistanceScene, settings: Settings) -> CommandOutput:
    spec = PantsSpec(scene.exact_lengths())
    d = hexagon_distance(spec, scene.i, scene.j)
    d_swapped = hexagon_distance(spec, scene.j, scene.i)

    payload: dict[str, Any] = {
        "pants": spec.to_json(),
        "slots": [scene.i, scene.j],
        "distance": d,
        "collar_widths": [collar_width(spec.length(s)) for s in (1, 2, 3)],
    }
    if scene.bound is not None:
        payload["bound"] = str(scene.bound)
        payload["bounded"] = spec.is_bounded(scene.exact_bound())
    checks = [
        check_finite("distance", d),
        CheckResult("positive", d > 0, d, "> 0"),
        check_at_most("symmetry", abs(d - d_swapped), 0.0),
    ]
    return CommandOutput(payload, checks)


def run_spectrum_obstruct(scene: SpectrumObstructScene, settings: Settings) -> CommandOutput:
    n_build = scene.n_max + SPECTRUM_MARGIN
    if not scene.exact:
        n_build = min(n_build, settings.pants.float_factorial_limit)
    first, second = factorial_spectra(n_build, scene.exact, settings.pants.float_factorial_limit)
    report = spectrum_obstruction(first, second, scene.K, raise_on_empty=False)

    checked = [n for n in range(scene.K + 1, scene.n_max + 1)]
    mismatches = {m.index: m for m in report.mismatches}
    wrong_targets = [n for n in checked if report.entry(n).targets != [n] or report.entry(n).gluing_hits]
    wrong_genus = [
        n
        for n in checked
        if n not in mismatches or (mismatches[n].genus_source, mismatches[n].genus_target) != (n + 1, n)
    ]

    payload = report.to_json()
    payload["checked_indices"] = checked
    checks = [
        CheckResult("targets_exactly_N", not wrong_targets, wrong_targets, "alpha_N admits only alpha_N for K < N <= n_max"),
        CheckResult("genus_mismatch", not wrong_genus, wrong_genus, "genus N+1 forced onto genus N"),
        CheckResult("obstructed", report.obstructed, len(report.mismatches), "at least one mismatch"),
    ]
    return CommandOutput(payload, checks)


def run_xinfty_build(scene: XinftyBuildScene, settings: Settings) -> CommandOutput:
    surface = build_xinfty(scene.generations, scene.exact_length(), scene.subsurface_genus)
    k = scene.generations
    payload = surface.to_json()
    payload["genus"] = surface.genus()
    checks = [
        check_equal("pants_count", len(surface.pants), 2 * (2**k - 1)),
        check_equal("half_boundary_count", len(surface.half_boundary(1)), 2**k + 1),
        check_equal("genus", payload["genus"], 0),
    ]
    if scene.subsurface_genus is not None:
        checks.append(
            check_equal("subsurface_boundary", len(surface.subsurface_boundary()), 2 * scene.subsurface_genus)
        )
    out = CommandOutput(payload, checks)
    if "dot" in scene.formats:
        out.dot = surface.to_dot()
    if "svg" in scene.formats:
        out.svg = render_svg(graph_shapes(surface.to_networkx()), precision=settings.render.precision)
    return out


def boundary_from_spec(spec: BoundarySpec, settings: Settings) -> BoundaryMap:
    """Boundary map described by a scene's ``map`` block."""
    if spec.kind == "power":
        return power_map(spec.alpha, spec.k)
    assert spec.kappa is not None and spec.positive is not None
    pos = np.asarray(spec.positive, dtype=float)
    neg = None if spec.negative is None else np.asarray(spec.negative, dtype=float)
    return build_boundary_map(
        spec.k,
        spec.kappa,
        positive=(pos[:, 0], pos[:, 1]),
        negative=None if neg is None else (neg[:, 0], neg[:, 1]),
        seam_tol=settings.qc.seam_tol,
    )


def run_qs_scan(scene: QsScanScene, settings: Settings) -> CommandOutput:
    psi = boundary_from_spec(scene.map, settings)
    report = qs_constants(
        psi,
        x_nodes=scene.x_nodes or settings.qc.x_nodes,
        t_nodes=scene.t_nodes or settings.qc.t_nodes,
        t_exponent=scene.t_exponent or settings.qc.t_exponent,
        residual_pairs=scene.residual_pairs,
    )
    payload = report.to_json()
    payload["map"] = psi.to_json()
    checks = [
        CheckResult("case_iv_bounds", report.case_iv_ok, list(report.case_iv_range), "within [1/κ, κ]"),
        check_below("scaling_identity", report.scaling_residual, SCALING_TOL),
        check_finite("M_hat", report.M_hat),
        CheckResult("m_hat_positive", report.m_hat > 0, report.m_hat, "> 0"),
    ]
    out = CommandOutput(payload, checks)
    if "csv" in scene.formats:
        names = sorted(report.cases)
        out.csv = {
            "case": names,
            "sup": [report.cases[c].sup for c in names],
            "inf": [report.cases[c].inf for c in names],
            "samples": [report.cases[c].samples for c in names],
        }
    return out


def run_de_extend(scene: DeExtendScene, settings: Settings) -> CommandOutput:
    psi = boundary_from_spec(scene.map, settings)
    tol = scene.tol or settings.qc.tol
    ext = extend_equivariant(
        psi,
        grid=scene.grid,
        tol=tol,
        nodes=scene.nodes or settings.qc.de_nodes,
        max_iter=scene.max_iter or settings.qc.max_iter,
        breach_margin=settings.qc.breach_margin,
        strict=scene.strict,
        workers=settings.runtime.workers,
    )
    payload = ext.to_json()
    payload["map"] = psi.to_json()
    checks = [
        check_below("equivariance", ext.equivariance_residual, EQUIVARIANCE_TOL),
        check_below("sup_mu", ext.sup_mu, 1 - settings.qc.breach_margin),
        check_at_most("barycenter_residual", ext.max_residual, tol),
    ]
    out = CommandOutput(payload, checks)
    if "csv" in scene.formats:
        out.csv = ext.to_records()
    if "svg" in scene.formats:
        out.svg = render_svg(points_shapes(ext.values), precision=settings.render.precision)
    return out


def run_annulus_glue(scene: AnnulusGlueScene, settings: Settings) -> CommandOutput:
    psi = boundary_from_spec(scene.map, settings)
    pair = annulus_pair(psi.k, psi.kappa)
    report = glue_annulus_map(
        psi,
        pair,
        grid=scene.grid,
        tol=scene.tol or settings.qc.tol,
        nodes=scene.nodes or settings.qc.de_nodes,
        max_iter=scene.max_iter or settings.qc.max_iter,
        side_dilatations=scene.side_dilatations,
        workers=settings.runtime.workers,
    )
    # log r / 2π against π / log k: two expressions of the same modulus
    modulus_gap = max(
        abs(math.log(r) / (2 * math.pi) - math.pi / math.log(k)) / (math.pi / math.log(k))
        for r, k in ((pair.r, pair.k), (pair.rho, pair.kappa))
    )
    pairing_gap = abs(math.log(pair.r) * math.log(pair.k) - MODULUS_CONSTANT) / MODULUS_CONSTANT

    payload = report.to_json()
    payload["map"] = psi.to_json()
    checks = [
        check_below("modulus_pairing", max(modulus_gap, pairing_gap), MODULUS_TOL),
        check_below("trace_error", report.trace_error, TRACE_CHECK_TOL),
        check_below("equivariance", report.equivariance_residual, EQUIVARIANCE_TOL),
        check_finite("dilatation_bound", report.dilatation_bound),
    ]
    out = CommandOutput(payload, checks)
    if "csv" in scene.formats:
        a, b = report.annulus_points.ravel(), report.image_points.ravel()
        out.csv = {"re_w": a.real, "im_w": a.imag, "re_image": b.real, "im_image": b.imag}
    if "svg" in scene.formats:
        out.svg = render_svg(points_shapes(report.image_points), precision=settings.render.precision)
    return out
