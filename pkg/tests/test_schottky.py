"""Tests for Schottky validation, word enumeration and disk trees."""

import dataclasses

import numpy as np
import pytest

from schottkit.moebius import Circle, MapClass, MoebiusMap, classify, map_circle
from schottkit.schottky import (
    ContractionFailure,
    DegenerateGroupError,
    DepthLimitError,
    GroupWord,
    InvalidPairingError,
    OverlapError,
    SchottkyEngine,
    Validity,
    apply_word,
    boundary_curve_count,
    build_schottky,
    classical_configuration,
    copy_count,
    detect_parabolic_cusp,
    enumerate_words,
    exhaustion_stats,
    limit_set,
    pairing_map,
    random_reduced_word,
    word_count,
    word_matrix,
)


def _overlapping_disks() -> tuple[list[Circle], list[MoebiusMap]]:
    disks = [
        Circle.disk(-0.5, 1),
        Circle.disk(0.5, 1),
        Circle.disk(-6, 1),
        Circle.disk(6, 1),
    ]
    return disks, [pairing_map(disks[0], disks[1]), pairing_map(disks[2], disks[3])]


def test_classical_configuration_is_classical(classical_g2):
    """Test the standard two-pair configuration validates as classical."""
    assert classical_g2.validity is Validity.CLASSICAL
    assert classical_g2.tangency_point is None
    assert classical_g2.diagnostics.min_gap == pytest.approx(1.0)
    assert classical_g2.diagnostics.paired_gaps == pytest.approx((4.0, 10.0))


def test_classical_generators_are_loxodromic(classical_g2):
    """Test every generator of a classical group is loxodromic."""
    for g in classical_g2.generators:
        assert classify(g).kind is MapClass.LOXODROMIC


def test_pairings_map_exterior_onto_interior(classical_g2):
    """Test γ_i sends ext(D_{2i-1}) onto int(D_{2i})."""
    for i, g in enumerate(classical_g2.generators):
        image = map_circle(g, classical_g2.disks[2 * i].flipped())
        assert image.approx_equals(classical_g2.disks[2 * i + 1], tol=1e-9)


def test_tangent_configuration_detected(tangent_g2):
    """Test tangent disks with a parabolic pairing give the degenerate class."""
    assert tangent_g2.validity is Validity.TANGENT_DEGENERATE
    assert tangent_g2.tangency_point == pytest.approx(0j)
    assert tangent_g2.diagnostics.tangencies == ((3, 4),)


def test_overlap_raises_with_pair():
    """Test overlapping D_1 and D_2 raise OverlapError naming (1, 2)."""
    disks, generators = _overlapping_disks()
    with pytest.raises(OverlapError) as exc_info:
        build_schottky(disks, generators)
    assert exc_info.value.pairs == [(1, 2)]


def test_overlap_lenient_mode_reports_invalid():
    """Test strict=False returns an invalid verdict with diagnostics."""
    disks, generators = _overlapping_disks()
    data = build_schottky(disks, generators, strict=False)
    assert data.validity is Validity.INVALID
    assert data.diagnostics.overlaps == ((1, 2),)
    assert data.diagnostics.min_gap == pytest.approx(-1.0)


def test_bad_pairing_raises():
    """Test a generator that misses its target disk raises InvalidPairingError."""
    disks, generators = classical_configuration(2)
    generators[0] = MoebiusMap.dilation(2)
    with pytest.raises(InvalidPairingError) as exc_info:
        build_schottky(disks, generators)
    assert exc_info.value.generators == [1]


def test_wrong_disk_count_rejected():
    """Test mismatched disk and generator counts are rejected."""
    disks, generators = classical_configuration(2)
    with pytest.raises(ValueError):
        build_schottky(disks[:3], generators)


@pytest.mark.parametrize("genus, n, expected", [(2, 1, 4), (2, 2, 12), (3, 0, 1), (3, 2, 30)])
def test_enumerate_words_counts(genus, n, expected):
    """Test word counts match 2g(2g-1)^(n-1)."""
    words = enumerate_words(genus, n)
    assert len(words) == expected
    assert len(set(words)) == expected
    assert all(w.reduced and w.length == n for w in words)


def test_enumerate_words_identity():
    """Test length zero gives only the empty word."""
    assert enumerate_words(3, 0) == [GroupWord(())]


@pytest.mark.parametrize("genus", [2, 3, 4])
def test_exact_counting_formulas(genus):
    """Test exhaustion counts against the closed forms as exact integers."""
    for n in range(0, 7):
        if n <= 4:
            assert len(enumerate_words(genus, n)) == word_count(genus, n)
        assert boundary_curve_count(genus, n) == 2 * genus * (2 * genus - 1) ** n
        assert copy_count(genus, n) == 1 + sum(
            2 * genus * (2 * genus - 1) ** k for k in range(n)
        )


def test_enumerate_words_depth_limit():
    """Test exceeding the node budget raises DepthLimitError."""
    with pytest.raises(DepthLimitError):
        enumerate_words(2, 20, budget=1000)


def test_exhaustion_stats_genus_two(classical_g2):
    """Test W_0..W_2 counts and radius extrema for g = 2."""
    stats = exhaustion_stats(classical_g2, 2)
    assert stats.boundary_curves == [4, 12, 36]
    assert stats.copies == [1, 5, 17]
    maxima = [lvl.max_radius for lvl in stats.levels]
    assert maxima[0] == pytest.approx(1.0)
    assert maxima[0] > maxima[1] > maxima[2]


def test_exhaustion_counts_without_geometry(classical_g2):
    """Test counts-only mode skips the tree and leaves radii empty."""
    stats = exhaustion_stats(classical_g2, 6, with_radii=False)
    assert stats.boundary_curves[-1] == 4 * 3**6
    assert stats.levels[-1].max_radius is None


def test_limit_set_depth_zero_and_one_are_roots(classical_g2):
    """Test max_depth 0 and 1 both give the 2g root disks."""
    for depth in (0, 1):
        tree = limit_set(classical_g2, depth)
        assert tree.node_count == 4
        np.testing.assert_allclose(np.sort(tree.level(1).radii), [1, 1, 1, 1])


def test_limit_set_level_counts(classical_g2):
    """Test full levels hold 2g(2g-1)^(n-1) nodes."""
    tree = limit_set(classical_g2, 5)
    assert [lvl.size for lvl in tree.levels] == [word_count(2, n) for n in range(1, 6)]


def test_limit_set_nesting_and_decay(classical_g2):
    """Test every child disk lies in its parent and radii strictly decrease."""
    tree = limit_set(classical_g2, 6)
    for depth in range(2, 7):
        child = tree.level(depth)
        parent = tree.level(depth - 1)
        gap = parent.radii[child.parent] - (
            np.abs(child.centers - parent.centers[child.parent]) + child.radii
        )
        assert gap.min() > 0
        assert np.all(child.radii < parent.radii[child.parent])


def test_limit_set_depth_eight_contracts(classical_g2):
    """Test leaf radii at depth 8 are below the largest radius at depth 4."""
    tree = limit_set(classical_g2, 8)
    assert tree.level(8).radii.max() < tree.level(4).radii.max()
    assert tree.accuracy == pytest.approx(tree.level(8).radii.max())


def test_limit_set_max_radius_stop(classical_g2):
    """Test radius-stopped expansion leaves only small leaves or full-depth nodes."""
    tree = limit_set(classical_g2, 30, max_radius=0.05)
    _, radii, depths = tree.leaves()
    assert np.all((radii < 0.05) | (depths == 30))


def test_tree_nodes_follow_word_images(classical_g2):
    """Test node disks equal the image of the last letter's disk under the prefix."""
    tree = limit_set(classical_g2, 3)
    word = GroupWord((1, 2, -1))
    idx = tree.find(word)
    expected = map_circle(word_matrix(classical_g2, GroupWord((1, 2))), classical_g2.disk_for(-1))
    assert tree.level(3).centers[idx] == pytest.approx(expected.c)
    assert tree.level(3).radii[idx] == pytest.approx(expected.r)


def test_word_action_consistency(classical_g2, rng):
    """Test letter-by-letter and precomposed evaluation agree."""
    points = [0.1 + 0.2j, 10j, -2 + 1j]
    for _ in range(200):
        word = random_reduced_word(2, int(rng.integers(0, 6)), rng)
        m = word_matrix(classical_g2, word)
        for z in points:
            assert abs(apply_word(classical_g2, word, z) - m(z)) < 1e-8


def test_parallel_expansion_is_deterministic(classical_g2):
    """Test threaded expansion reproduces the serial node order exactly."""
    serial = SchottkyEngine(workers=1).limit_set(classical_g2, 6)
    threaded = SchottkyEngine(workers=4, parallel_threshold=1).limit_set(classical_g2, 6)
    for a, b in zip(serial.levels, threaded.levels, strict=True):
        np.testing.assert_array_equal(a.words, b.words)
        np.testing.assert_array_equal(a.parent, b.parent)
        np.testing.assert_allclose(a.centers, b.centers, rtol=0, atol=1e-14)


def test_limit_set_budget(classical_g2):
    """Test the node budget is enforced before expansion."""
    with pytest.raises(DepthLimitError):
        SchottkyEngine(node_budget=100).limit_set(classical_g2, 6)


def test_limit_set_refuses_tangent_group(tangent_g2):
    """Test tangent-degenerate data cannot produce a limit set."""
    with pytest.raises(DegenerateGroupError):
        limit_set(tangent_g2, 3)


def test_disk_images_available_for_tangent_group(tangent_g2):
    """Test finite-depth disk images still render for degenerate data."""
    tree = SchottkyEngine().disk_tree(tangent_g2, 3, verify=False)
    assert tree.node_count == 4 + 12 + 36


def test_broken_generators_raise_contraction_failure(classical_g2):
    """Test swapped pairings make children escape their parents."""
    broken = dataclasses.replace(
        classical_g2, generators=tuple(g.inverse() for g in classical_g2.generators)
    )
    with pytest.raises(ContractionFailure):
        limit_set(broken, 3)


def test_detect_parabolic_cusp_classical(classical_g2):
    """Test classical groups have no cusp."""
    assert detect_parabolic_cusp(classical_g2) is None


def test_detect_parabolic_cusp_tangent(tangent_g2):
    """Test the cusp is the last generator fixing the tangency point."""
    found = detect_parabolic_cusp(tangent_g2)
    assert found is not None
    index, point = found
    assert index == 2
    assert abs(point.z) < 1e-9
    assert tangent_g2.disks[2].on_curve(point.z, tol=1e-9)
    assert tangent_g2.disks[3].on_curve(point.z, tol=1e-9)


def test_detect_parabolic_cusp_prefers_touching_pair(tangent_g2):
    """Test a parabolic generator away from its disks loses to the one closing the tangency."""
    stray = MoebiusMap(1, 0, 1, 1)
    data = dataclasses.replace(tangent_g2, generators=(stray, tangent_g2.generators[1]))
    index, point = detect_parabolic_cusp(data)
    assert index == 2
    assert abs(point.z) < 1e-9


def test_detect_parabolic_cusp_at_infinity(tangent_g2):
    """Test a translation pairing two half-planes reports the cusp at ∞."""
    disks = tangent_g2.disks[:2] + (Circle.line(0, 1j), Circle.line(1, 1j, inside=False))
    data = dataclasses.replace(
        tangent_g2,
        disks=disks,
        generators=(tangent_g2.generators[0], MoebiusMap(1, 1, 0, 1)),
        tangency_point=None,
    )
    index, point = detect_parabolic_cusp(data)
    assert index == 2
    assert point.is_infinity
