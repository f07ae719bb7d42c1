"""Tests for pants geometry, factorial spectra, the obstruction scan and X_∞."""

import itertools
import math
from fractions import Fraction as F

import pytest

from schottkit.pants import (
    EmptyTargetError,
    GluedSurface,
    GluingError,
    LengthSpectrum,
    PantsError,
    PantsSpec,
    PrecisionLimitError,
    SpectrumCurve,
    build_xinfty,
    collar_width,
    crossing_bound,
    factorial_spectra,
    factorial_surface,
    hexagon_cosh,
    hexagon_distance,
    spectrum_obstruction,
    wolpert_interval,
)

UNIT = PantsSpec.of(1.0, 1.0, 1.0)


def test_hexagon_distance_unit_pants():
    """Test the unit pants distance against the closed-form oracle."""
    assert hexagon_cosh(UNIT, 1, 2) == pytest.approx(8.835396178066, rel=1e-12)
    assert hexagon_distance(UNIT, 1, 2) == pytest.approx(2.868695141620, rel=1e-12)


def test_hexagon_distance_exact_lengths():
    """Test Fraction lengths give the same distance as floats."""
    exact = PantsSpec.of(F(1), F(1), F(1))
    assert hexagon_distance(exact, 2, 3) == pytest.approx(hexagon_distance(UNIT, 2, 3), rel=1e-15)


def test_hexagon_distance_symmetry_under_relabeling(rng):
    """Test distances are invariant under every permutation of the slots."""
    for _ in range(50):
        lengths = tuple(float(x) for x in rng.uniform(0.1, 5.0, 3))
        spec = PantsSpec(lengths)
        for perm in itertools.permutations(range(3)):
            permuted = PantsSpec(tuple(lengths[p] for p in perm))
            # slot s of the permuted pants is slot perm[s-1]+1 of the original
            where = {perm[s] + 1: s + 1 for s in range(3)}
            for i, j in itertools.combinations((1, 2, 3), 2):
                assert hexagon_distance(permuted, where[i], where[j]) == pytest.approx(
                    hexagon_distance(spec, i, j), rel=1e-12
                )
                assert hexagon_distance(spec, i, j) == hexagon_distance(spec, j, i)


def test_hexagon_distance_monotonicity():
    """Test d_12 grows as ℓ_1 shrinks and as the opposite ℓ_3 grows."""
    base = hexagon_distance(PantsSpec.of(1.0, 1.0, 1.0), 1, 2)
    assert hexagon_distance(PantsSpec.of(0.5, 1.0, 1.0), 1, 2) > base
    assert hexagon_distance(PantsSpec.of(1.0, 1.0, 2.0), 1, 2) > base
    assert hexagon_distance(PantsSpec.of(1.0, 1.0, 0.5), 1, 2) < base


def test_hexagon_distance_rejects_equal_slots():
    """Test i == j and bad slots are rejected."""
    with pytest.raises(ValueError):
        hexagon_distance(UNIT, 2, 2)
    with pytest.raises(ValueError):
        hexagon_distance(UNIT, 0, 2)


def test_pants_spec_validation():
    """Test non-positive and non-finite lengths are rejected."""
    with pytest.raises(ValueError):
        PantsSpec.of(1.0, 0.0, 1.0)
    with pytest.raises(ValueError):
        PantsSpec.of(1.0, math.inf, 1.0)


def test_pants_bounded_flag():
    """Test is_bounded checks all lengths against [1/M, M]."""
    spec = PantsSpec.of(F(1), F(1), F(1, 6))
    assert not spec.is_bounded(5)
    assert spec.is_bounded(6)


def test_collar_width():
    """Test w(1) against the arcsinh oracle and monotone decrease."""
    assert collar_width(1.0) == pytest.approx(1.406829113747, rel=1e-12)
    assert collar_width(0.5) > collar_width(1.0)
    assert crossing_bound(1.0) == pytest.approx(2 * 1.406829113747, rel=1e-12)
    with pytest.raises(ValueError):
        collar_width(0.0)


def test_hexagon_distance_long_boundary():
    """Test a very long boundary stays finite: d_23 ≈ ℓ_1/2 - 2 log sinh(1/2)."""
    spec = PantsSpec.of(2000.0, 1.0, 1.0)
    expected = 1000.0 - 2 * math.log(math.sinh(0.5))
    assert hexagon_distance(spec, 2, 3) == pytest.approx(expected, rel=1e-12)
    assert math.isfinite(hexagon_distance(spec, 1, 2))
    with pytest.raises(PantsError):
        hexagon_cosh(spec, 2, 3)


def test_hexagon_distance_tiny_exact_boundary():
    """Test an exact length far below float range still gives a finite distance."""
    spec = PantsSpec.of(F(1), F(1), F(1, 10**400))
    expected = math.log(8 / math.tanh(0.5)) + 400 * math.log(10)
    assert hexagon_distance(spec, 1, 3) == pytest.approx(expected, rel=1e-12)
    assert hexagon_distance(spec, 1, 3) == hexagon_distance(spec, 3, 1)


def test_collar_width_extreme_lengths():
    """Test w(ℓ) ≈ log(4/ℓ) for tiny ℓ and w → 0 for huge ℓ."""
    assert collar_width(F(1, 10**400)) == pytest.approx(math.log(4) + 400 * math.log(10), rel=1e-12)
    assert collar_width(1e-10) == pytest.approx(math.asinh(1 / math.sinh(5e-11)), rel=1e-12)
    assert collar_width(1e-8) == pytest.approx(math.asinh(1 / math.sinh(5e-9)), rel=1e-12)
    assert 0.0 <= collar_width(2000.0) < 1e-300


def test_wolpert_interval_example():
    """Test a = 1/6, K = 2 gives the open interval (1/12, 1/3)."""
    window = wolpert_interval(F(1, 6), 2)
    assert (window.low, window.high, window.closed) == (F(1, 12), F(1, 3), False)
    assert window.contains(F(1, 6))
    assert not window.contains(F(1, 3))
    assert not window.contains(F(1, 12))


def test_wolpert_interval_conformal_case():
    """Test K = 1 gives the closed point {a}."""
    window = wolpert_interval(F(1, 6), 1)
    assert window.closed
    assert window.contains(F(1, 6))
    assert not window.contains(F(1, 7))


def test_wolpert_interval_right_endpoint_is_previous_length():
    """Test (a_N/N, N a_N) ends exactly at a_(N-1)."""
    first, _ = factorial_spectra(12)
    a = first.distinguished()
    for n in range(2, 13):
        assert wolpert_interval(a[n], n).high == a[n - 1]


def test_wolpert_interval_nesting():
    """Test intervals grow with K, so a length missing at K misses at every K' <= K."""
    a = F(1, 24)
    for k in range(1, 10):
        assert wolpert_interval(a, k).within(wolpert_interval(a, k + 1))
    outside = F(1, 2)
    assert not wolpert_interval(a, 5).contains(outside)
    assert not any(wolpert_interval(a, k).contains(outside) for k in range(1, 5))


def test_wolpert_interval_rejects_bad_input():
    """Test K < 1 and non-positive lengths raise."""
    with pytest.raises(ValueError):
        wolpert_interval(F(1, 2), F(1, 2))
    with pytest.raises(ValueError):
        wolpert_interval(F(0), 2)


def test_factorial_spectra_values():
    """Test a_3 = 1/6, a_4 = 1/24 and exact ratios a_n/a_(n+1) = n+1."""
    first, second = factorial_spectra(8)
    a = first.distinguished()
    assert a[3] == F(1, 6)
    assert a[4] == F(1, 24)
    for n in range(8):
        assert a[n] / a[n + 1] == n + 1
    assert min(second.distinguished()) == 1
    assert first.exact and second.exact


def test_factorial_spectra_genus_and_gluing_lengths():
    """Test alpha_N bounds genus N+1 in the first surface and N in the second."""
    first, second = factorial_spectra(10)
    for n in range(1, 11):
        assert first.genus_inside[n] == n + 1
        assert second.genus_inside[n] == n
    assert all(c.length == 1 for c in first.gluing_curves())
    assert all(c.length == 1 for c in second.gluing_curves())


def test_float_spectra_precision_limit():
    """Test float mode refuses n_max > 170 while exact mode does not."""
    with pytest.raises(PrecisionLimitError):
        factorial_spectra(171, exact=False)
    first, _ = factorial_spectra(170, exact=False)
    assert first.distinguished()[170] > 0
    exact_first, _ = factorial_spectra(300)
    assert exact_first.distinguished()[300] == F(1, math.factorial(300))


def test_spectrum_csv_frame():
    """Test the tabular view lists every curve."""
    first, _ = factorial_spectra(3)
    frame = first.to_frame()
    assert len(frame) == len(first.curves)
    assert list(frame.loc[frame["label"] == "alpha_3", "length"]) == ["1/6"]


def test_obstruction_single_example():
    """Test K = 2, N = 3 has the unique target 3 and a genus mismatch."""
    first, second = factorial_spectra(25)
    report = spectrum_obstruction(first, second, 2)
    entry = report.entry(3)
    assert entry.targets == [3]
    assert entry.forced
    assert entry.crossing_excluded
    assert entry.crossing_bound == pytest.approx(crossing_bound(1.0))
    assert any(m.index == 3 and (m.genus_source, m.genus_target) == (4, 3) for m in report.mismatches)
    assert report.obstructed


def test_obstruction_deep_exact_spectra():
    """Test exact spectra past the float factorial limit scan without overflow."""
    first, second = factorial_spectra(200)
    report = spectrum_obstruction(first, second, 2)
    entry = report.entry(200)
    assert entry.targets == [200]
    assert entry.forced
    assert entry.crossing_bound == pytest.approx(crossing_bound(1.0))
    assert any(m.index == 200 and (m.genus_source, m.genus_target) == (201, 200) for m in report.mismatches)


def test_obstruction_targets_all_pairs():
    """Test for 2 <= K < N <= 20 the admissible set is exactly {N}."""
    first, second = factorial_spectra(25)
    for K in range(2, 20):
        report = spectrum_obstruction(first, second, K)
        for n in range(K + 1, 21):
            entry = report.entry(n)
            assert entry.targets == [n]
            assert entry.gluing_hits == []
            mismatch = next(m for m in report.mismatches if m.index == n)
            assert (mismatch.target, mismatch.genus_source, mismatch.genus_target) == (n, n + 1, n)


def test_obstruction_identical_spectra_conformal():
    """Test identical spectra at K = 1 match the identity with no obstruction."""
    first, _ = factorial_spectra(10)
    report = spectrum_obstruction(first, first, 1)
    assert report.identity_matching
    assert report.mismatches == []
    assert not report.obstructed


def test_obstruction_empty_target():
    """Test a curve with no admissible image raises with the report attached."""
    first, _ = factorial_spectra(3)
    tiny = LengthSpectrum("one", [SpectrumCurve("alpha_1", "alpha", F(1), 1)], {1: 1})
    with pytest.raises(EmptyTargetError) as exc_info:
        spectrum_obstruction(first, tiny, 2)
    assert exc_info.value.indices == [2, 3]
    assert exc_info.value.report.obstructed

    report = spectrum_obstruction(first, tiny, 2, raise_on_empty=False)
    assert report.entry(3).empty


def test_obstruction_report_json():
    """Test the certificate text names both genera."""
    first, second = factorial_spectra(6)
    data = spectrum_obstruction(first, second, 2).to_json()
    assert data["obstructed"]
    assert any("genus 5" in text and "genus 4" in text for text in data["certificates"])
    assert data["entries"][3]["interval"] == {"low": "1/12", "high": "1/3", "closed": False}


def test_xinfty_two_generations():
    """Test X_2 is bounded by the five named geodesics."""
    surface = build_xinfty(2)
    labels = {surface.boundary_label(s) for s in surface.half_boundary(1)}
    assert labels == {"alpha_1,1", "alpha_2,2", "alpha_3,2", "alpha_2,3", "alpha_3,3"}
    assert surface.half(1) == [1, 2, 3]


@pytest.mark.parametrize("k", range(1, 13))
def test_xinfty_boundary_count(k):
    """Test X_k and X_(-k) are each bounded by 2^k + 1 curves."""
    surface = build_xinfty(k)
    assert len(surface.half_boundary(1)) == 2**k + 1
    assert len(surface.half_boundary(-1)) == 2**k + 1
    assert len(surface.pants) == 2 * (2**k - 1)


def test_xinfty_is_planar_and_bounded():
    """Test the doubled tree has genus zero and unit lengths."""
    surface = build_xinfty(4)
    assert surface.genus() == 0
    assert len(surface.free_boundaries()) == 2 * 2**4
    assert surface.is_bounded(1)


def test_xinfty_subsurface():
    """Test the genus-3 piece has six boundary curves."""
    surface = build_xinfty(3, subsurface_genus=3)
    assert surface.subsurface() == [1, 2, 3, 4]
    assert len(surface.subsurface_boundary()) == 6
    with pytest.raises(ValueError):
        build_xinfty(2, subsurface_genus=3)


def test_xinfty_dot_export():
    """Test DOT output marks the doubling edge."""
    dot = build_xinfty(1).to_dot()
    assert dot.startswith('graph "X_inf[1]" {')
    assert "style=dashed" in dot
    assert dot == build_xinfty(1).to_dot()


def test_gluing_errors():
    """Test unequal lengths and reused slots are refused."""
    surface = GluedSurface("test")
    surface.add_pants(1, PantsSpec.of(F(1), F(1), F(2)))
    surface.add_pants(2, PantsSpec.of(F(1), F(1), F(1)))
    with pytest.raises(GluingError):
        surface.glue((1, 3), (2, 1))
    surface.glue((1, 1), (2, 1))
    with pytest.raises(GluingError) as exc_info:
        surface.glue((1, 1), (2, 2))
    assert exc_info.value.slots == ((1, 1),)


@pytest.mark.parametrize("n_max", [1, 3, 7])
def test_factorial_surface_genus(n_max):
    """Test the glued chains have genus N+1 (from T_0) and N (from T_1)."""
    assert factorial_surface(n_max, start=0).genus() == n_max + 1
    if n_max > 1:
        assert factorial_surface(n_max, start=1).genus() == n_max


def test_factorial_surface_matches_spectrum():
    """Test glued curve lengths coincide with the spectrum labels."""
    first, second = factorial_spectra(5)
    assert factorial_surface(5, 0).curve_lengths() == {c.label: c.length for c in first.curves}
    assert factorial_surface(5, 1).curve_lengths() == {c.label: c.length for c in second.curves}
    assert not factorial_surface(5, 0).is_bounded(119)
    assert factorial_surface(5, 0).is_bounded(120)
