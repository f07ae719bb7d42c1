"""Pants decomposition of the complement of the circles C_k^i.

P(k, i) is the pair of pants inside C_k^i and outside its two child circles.
It carries index n = ε(i)(2^(k-1) + |i| - 1), so the children of P_n are
P_(2n) and P_(2n+1) on the same side. The outer circles of P_1 and P_(-1) are
both isotopic to the imaginary axis, which makes P_1 - P_(-1) the doubling
edge labeled C_0^0.
"""

import logging
from collections import Counter
from dataclasses import dataclass, field
from typing import Any

import networkx as nx
from networkx.algorithms.isomorphism import rooted_tree_isomorphism

from schottkit.cantor.intervals import check_level, level_indices
from schottkit.utils.rational import sign

logger = logging.getLogger(__name__)

DOUBLING = "doubling"


def pants_index(k: int, i: int) -> int:
    return sign(i) * (2 ** (k - 1) + abs(i) - 1)


def _circle_label(k: int, i: int) -> str:
    return "C_0^0" if k == 0 else f"C_{k}^{i}"


@dataclass(frozen=True)
class PantsNode:
    """One pair of pants with its three boundary circles.

    ``boundary`` uses the circle levels of the construction; ``display``
    shifts levels down by one so P_1 reads C_0^0, C_1^1, C_1^2.
    """

    index: int
    level: int
    circle_index: int
    boundary: tuple[str, str, str]
    display: tuple[str, str, str]
    stub: bool

    def to_json(self) -> dict[str, Any]:
        return {
            "index": self.index,
            "level": self.level,
            "circle_index": self.circle_index,
            "boundary": list(self.boundary),
            "display": list(self.display),
            "stub": self.stub,
        }


@dataclass
class PantsGraph:
    """Adjacency of pants; edges carry the shared circle label."""

    k_max: int
    nodes: dict[int, PantsNode]
    graph: nx.Graph = field(repr=False)

    @property
    def node_count(self) -> int:
        return self.graph.number_of_nodes()

    def free_ends(self, n: int) -> int:
        """Boundary curves of P_n that are not glued inside the truncation."""
        return 3 - int(self.graph.degree[n])

    def stubs(self) -> list[int]:
        return sorted(n for n, node in self.nodes.items() if node.stub)

    def without_edge(self, u: int, v: int) -> "PantsGraph":
        """Copy with one edge deleted (used to probe the isomorphism check)."""
        g = self.graph.copy()
        g.remove_edge(u, v)
        return PantsGraph(self.k_max, dict(self.nodes), g)

    def to_json(self) -> dict[str, Any]:
        edges = sorted(
            (min(u, v), max(u, v), data["circle"], bool(data.get(DOUBLING, False)))
            for u, v, data in self.graph.edges(data=True)
        )
        return {
            "k_max": self.k_max,
            "nodes": [self.nodes[n].to_json() for n in sorted(self.nodes)],
            "edges": [
                {"u": u, "v": v, "circle": circle, "doubling": doubling}
                for u, v, circle, doubling in edges
            ],
        }


def pants_graph(k_max: int) -> PantsGraph:
    """Pants P(k, i) for 1 <= k <= k_max; level k_max pants are flagged stubs.

    Raises:
        LevelLimitError: If k_max is outside 1..40
    """
    check_level(k_max)
    graph = nx.Graph()
    nodes: dict[int, PantsNode] = {}

    for k in range(1, k_max + 1):
        for i in level_indices(k):
            n = pants_index(k, i)
            near = sign(i) * (2 * abs(i) - 1)
            far = 2 * i
            boundary = (
                _circle_label(k, i),
                _circle_label(k + 1, near),
                _circle_label(k + 1, far),
            )
            display = (
                _circle_label(k - 1, i if k > 1 else 0),
                _circle_label(k, near),
                _circle_label(k, far),
            )
            nodes[n] = PantsNode(n, k, i, boundary, display, stub=(k == k_max))
            graph.add_node(n, level=k, stub=(k == k_max))

    for n, node in nodes.items():
        if node.level < k_max:
            for child in (2 * n, 2 * n + sign(n)):
                graph.add_edge(n, child, circle=nodes[child].boundary[0], doubling=False)
    graph.add_edge(1, -1, circle="C_0^0", doubling=True)

    logger.debug(f"Pants graph k_max={k_max}: {graph.number_of_nodes()} nodes")
    return PantsGraph(k_max, nodes, graph)


@dataclass(frozen=True)
class IsomorphismResult:
    """Explicit node bijection, or the first check that failed."""

    isomorphic: bool
    mapping: dict[int, int] | None = None
    counterexample: str | None = None

    def to_json(self) -> dict[str, Any]:
        return {
            "isomorphic": self.isomorphic,
            "mapping": None if self.mapping is None else {str(k): v for k, v in sorted(self.mapping.items())},
            "counterexample": self.counterexample,
        }


def _doubling_edges(g: nx.Graph) -> list[tuple[Any, Any]]:
    return [(u, v) for u, v, data in g.edges(data=True) if data.get(DOUBLING)]


def _halves(g: nx.Graph, edge: tuple[Any, Any]) -> tuple[nx.Graph, nx.Graph] | None:
    """Split at the doubling edge into the trees rooted at its endpoints."""
    cut = g.copy()
    cut.remove_edge(*edge)
    parts = [cut.subgraph(c).copy() for c in nx.connected_components(cut)]
    if len(parts) != 2:
        return None
    u, v = edge
    first = next(p for p in parts if u in p)
    second = next(p for p in parts if v in p)
    if first is second:
        return None
    return first, second


def _tree_map(t1: nx.Graph, r1: Any, t2: nx.Graph, r2: Any) -> dict[Any, Any] | None:
    if t1.number_of_nodes() != t2.number_of_nodes():
        return None
    if t1.number_of_nodes() == 1:
        return {r1: r2}
    pairs = rooted_tree_isomorphism(t1, r1, t2, r2)
    if not pairs:
        return None
    return dict(pairs)


def isomorphism_to(g1: nx.Graph, g2: nx.Graph) -> IsomorphismResult:
    """Compare two doubled rooted trees, each with one edge flagged ``doubling``."""
    if g1.number_of_nodes() != g2.number_of_nodes():
        return IsomorphismResult(
            False,
            counterexample=f"node counts differ: {g1.number_of_nodes()} vs {g2.number_of_nodes()}",
        )

    deg1 = Counter(d for _, d in g1.degree)
    deg2 = Counter(d for _, d in g2.degree)
    if deg1 != deg2:
        degree = min(set(deg1.items()) ^ set(deg2.items()))[0]
        witness = sorted(n for n, d in g1.degree if d == degree)
        return IsomorphismResult(
            False,
            counterexample=(
                f"degree {degree} occurs {deg1.get(degree, 0)} vs {deg2.get(degree, 0)} times"
                + (f" (e.g. node {witness[0]})" if witness else "")
            ),
        )

    e1, e2 = _doubling_edges(g1), _doubling_edges(g2)
    if len(e1) != 1 or len(e2) != 1:
        return IsomorphismResult(
            False, counterexample=f"doubling edges: {len(e1)} vs {len(e2)} (need exactly one)"
        )

    h1, h2 = _halves(g1, e1[0]), _halves(g2, e2[0])
    if h1 is None or h2 is None or not all(nx.is_tree(t) for t in (*h1, *h2)):
        return IsomorphismResult(
            False, counterexample="removing the doubling edge does not leave two trees"
        )

    mapping: dict[int, int] | None = None
    for flip in (False, True):
        targets = (h2[1], h2[0]) if flip else h2
        roots = (e2[0][1], e2[0][0]) if flip else e2[0]
        left = _tree_map(h1[0], e1[0][0], targets[0], roots[0])
        right = _tree_map(h1[1], e1[0][1], targets[1], roots[1])
        if left is not None and right is not None:
            mapping = {**left, **right}
            break
    if mapping is None:
        return IsomorphismResult(False, counterexample="rooted halves are not isomorphic")

    for u, v, data in g1.edges(data=True):
        mu, mv = mapping[u], mapping[v]
        if not g2.has_edge(mu, mv):
            return IsomorphismResult(False, counterexample=f"edge {u}-{v} maps to non-edge {mu}-{mv}")
        if bool(data.get(DOUBLING)) != bool(g2.edges[mu, mv].get(DOUBLING)):
            return IsomorphismResult(False, counterexample=f"edge {u}-{v} changes doubling flag")

    return IsomorphismResult(True, mapping=mapping)


def graph_isomorphic_to_xinfty(g: PantsGraph | nx.Graph, depth: int) -> IsomorphismResult:
    """Check the pants graph against the X_∞ gluing truncated at ``depth`` generations."""
    from schottkit.pants.surfaces import build_xinfty

    graph = g.graph if isinstance(g, PantsGraph) else g
    reference = build_xinfty(depth).to_networkx()
    result = isomorphism_to(graph, reference)
    logger.info(
        f"Isomorphism with X_∞ at depth {depth}: "
        f"{'found' if result.isomorphic else result.counterexample}"
    )
    return result
