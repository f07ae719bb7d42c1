"""Tests for exact Cantor intervals, circle certificates and the pants graph."""

from fractions import Fraction as F

import pytest

from schottkit.cantor import (
    AXIS,
    LevelLimitError,
    brute_force_min_gap,
    cantor_circle,
    cantor_circles,
    cantor_intervals,
    gap,
    graph_isomorphic_to_xinfty,
    interval,
    isomorphism_to,
    level_indices,
    pants_graph,
    pants_index,
    self_similarity_holds,
)
from schottkit.pants import build_xinfty


def test_level_one_intervals():
    """Test I_1^(-1) = [-1, -1/3] and I_1^1 = [1/3, 1]."""
    assert (interval(1, -1).left, interval(1, -1).right) == (F(-1), F(-1, 3))
    assert (interval(1, 1).left, interval(1, 1).right) == (F(1, 3), F(1))


def test_level_two_closed_form_matches_children():
    """Test the closed form agrees with removing middle thirds."""
    inner, outer = interval(1, 1).children()
    assert inner == interval(2, 1)
    assert outer == interval(2, 2)
    assert (outer.left, outer.right) == (F(7, 9), F(1))
    inner_neg, outer_neg = interval(1, -1).children()
    assert inner_neg == interval(2, -1)
    assert outer_neg == interval(2, -2)


@pytest.mark.parametrize("k", [1, 2, 5, 9])
def test_intervals_sorted_and_measure(k):
    """Test level k has 2^k disjoint intervals of total length 2^(k+1)/3^k."""
    intervals = cantor_intervals(k)
    assert len(intervals) == 2**k
    assert sum(iv.length for iv in intervals) == F(2 ** (k + 1), 3**k)
    for a, b in zip(intervals, intervals[1:]):
        assert a.right < b.left


def test_children_recursion_agrees_with_closed_form():
    """Test recursive refinement reproduces interval(k, i) up to level 8."""
    frontier = [interval(1, -1), interval(1, 1)]
    for k in range(2, 9):
        frontier = [child for iv in frontier for child in iv.children()]
        assert sorted(frontier) == sorted(interval(k, i) for i in level_indices(k))


def test_deep_level_is_exact():
    """Test a level-40 interval keeps its exact denominator."""
    iv = interval(40, 2**39)
    assert iv.right == F(1)
    assert iv.length == F(2, 3**40)


def test_level_limits():
    """Test levels outside 1..40 and oversized families are refused."""
    with pytest.raises(LevelLimitError):
        interval(41, 1)
    with pytest.raises(LevelLimitError):
        cantor_circles(0)
    with pytest.raises(LevelLimitError):
        cantor_circles(25, budget=1000)
    with pytest.raises(ValueError):
        interval(2, 3)


def test_default_budget_points_to_closed_form():
    """Test level 21 is refused under the default budget while single deep intervals still work."""
    with pytest.raises(LevelLimitError, match=r"interval\(k, i\)"):
        cantor_intervals(21)
    with pytest.raises(LevelLimitError, match=r"cantor_circle\(k, i\)"):
        cantor_circles(20)
    deep = cantor_circle(40, -(2**39))
    assert deep.center == -interval(40, 2**39).midpoint


def test_first_circle_and_axis_gap():
    """Test C_1^1 has center 2/3, radius 5/9 and clears the axis by 1/9."""
    c = cantor_circle(1, 1)
    assert c.center == F(2, 3)
    assert c.radius == F(5, 9)
    assert gap(AXIS, c) == F(1, 9)


def test_nested_and_sibling_gaps():
    """Test C_2^2 sits inside C_1^1 and its sibling gap is 2/27."""
    parent, near, far = cantor_circle(1, 1), cantor_circle(2, 1), cantor_circle(2, 2)
    assert far.right == F(29, 27) < parent.right == F(33, 27)
    assert gap(parent, far) == F(4, 27)
    assert gap(near, far) == F(2, 27)


@pytest.mark.parametrize("k_max, count", [(1, 3), (2, 7), (3, 15)])
def test_circle_counts(k_max, count):
    """Test the family holds the axis plus 2(2^k - 1) circles."""
    family = cantor_circles(k_max)
    assert len(family.circles) == count
    assert family.certificate.circle_count == count


def test_certificate_level_one_gap_is_axis():
    """Test for k_max = 1 the minimal gap is the axis gap 1/9."""
    cert = cantor_circles(1).certificate
    assert cert.valid
    assert cert.min_gap == F(1, 9)
    assert cert.axis_gap == F(1, 9)


def test_certificate_level_twelve():
    """Test exact disjointness and containment for k_max = 12."""
    cert = cantor_circles(12).certificate
    assert cert.disjoint
    assert cert.containment_ok
    assert cert.violations == []
    assert cert.min_gap == F(2, 3**13)


@pytest.mark.parametrize("k_max", [1, 2, 3, 4, 5, 6])
def test_sweep_matches_brute_force(k_max):
    """Test the sweep's minimal gap equals the all-pairs minimum."""
    value, _ = brute_force_min_gap(k_max)
    assert cantor_circles(k_max).certificate.min_gap == value


def test_containment_parents():
    """Test every circle is enclosed by the parent the index rule names."""
    cert = cantor_circles(4).certificate
    assert cert.parents[(2, 2)] == (1, 1)
    assert cert.parents[(3, -3)] == (2, -2)
    assert cert.parents[(1, -1)] is None


def test_self_similarity():
    """Test each child pair is the scaled level-one pair."""
    assert self_similarity_holds(7)


def test_certificate_json_uses_fractions():
    """Test certificate JSON renders exact gaps as p/q strings."""
    data = cantor_circles(2).certificate.to_json()
    assert data["min_gap"] == "2/27"
    assert data["axis_gap"] == "1/9"


def test_pants_index_layout():
    """Test P(k, i) indices follow the heap order on both sides."""
    assert pants_index(1, 1) == 1
    assert pants_index(2, 2) == 3
    assert pants_index(3, -4) == -7


def test_pants_graph_level_one():
    """Test the level-one graph is P_1 and P_(-1) joined along C_0^0."""
    graph = pants_graph(1)
    assert graph.node_count == 2
    assert graph.nodes[1].display == ("C_0^0", "C_1^1", "C_1^2")
    assert graph.nodes[1].boundary == ("C_1^1", "C_2^1", "C_2^2")
    assert graph.graph.edges[1, -1]["doubling"]
    assert graph.graph.edges[1, -1]["circle"] == "C_0^0"


def test_pants_graph_stubs_and_free_ends():
    """Test level-k_max pants are stubs with two free ends."""
    graph = pants_graph(3)
    assert graph.node_count == 14
    assert graph.stubs() == [-7, -6, -5, -4, 4, 5, 6, 7]
    assert graph.free_ends(5) == 2
    assert graph.free_ends(1) == 0
    assert graph.graph.edges[1, 2]["circle"] == "C_2^1"


def test_pants_graph_matches_xinfty_edges():
    """Test the pants graph and the X_∞ gluing share the same edge set."""
    graph = pants_graph(4).graph
    reference = build_xinfty(4).to_networkx()
    assert {frozenset(e) for e in graph.edges} == {frozenset(e) for e in reference.edges}


@pytest.mark.parametrize("depth", range(1, 11))
def test_graph_isomorphic_to_xinfty(depth):
    """Test an explicit isomorphism exists for depths 1 through 10."""
    result = graph_isomorphic_to_xinfty(pants_graph(depth), depth)
    assert result.isomorphic
    assert result.mapping is not None
    assert len(result.mapping) == 2 * (2**depth - 1)
    assert {result.mapping[1], result.mapping[-1]} == {1, -1}


def test_mutilated_graph_gives_counterexample():
    """Test deleting an edge is caught with a degree counterexample."""
    broken = pants_graph(3).without_edge(2, 4)
    result = graph_isomorphic_to_xinfty(broken, 3)
    assert not result.isomorphic
    assert "degree" in result.counterexample


def test_depth_mismatch_gives_counterexample():
    """Test graphs of different depths differ in node count."""
    result = isomorphism_to(pants_graph(3).graph, build_xinfty(4).to_networkx())
    assert not result.isomorphic
    assert "node counts" in result.counterexample
