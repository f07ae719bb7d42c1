"""Graphviz DOT text for pants graphs and glued surfaces."""

from typing import Any

import networkx as nx


def _quote(value: Any) -> str:
    text = str(value).replace("\\", "\\\\").replace('"', '\\"')
    return f'"{text}"'


def graph_to_dot(graph: nx.Graph, name: str = "surface", edge_label: str = "circle") -> str:
    """Undirected DOT document with nodes and edges in sorted order.

    Edges flagged ``doubling`` are drawn dashed.
    """
    lines = [f"graph {_quote(name)} {{"]
    for node in sorted(graph.nodes, key=str):
        label = graph.nodes[node].get("label", f"P_{node}")
        lines.append(f"  {_quote(node)} [label={_quote(label)}];")

    edges = []
    for u, v, data in graph.edges(data=True):
        a, b = sorted((u, v), key=str)
        edges.append((str(a), str(b), a, b, data))
    for _, _, a, b, data in sorted(edges, key=lambda e: (e[0], e[1], str(e[4].get(edge_label, "")))):
        attrs = []
        if edge_label in data:
            attrs.append(f"label={_quote(data[edge_label])}")
        if data.get("doubling"):
            attrs.append("style=dashed")
        suffix = f" [{', '.join(attrs)}]" if attrs else ""
        lines.append(f"  {_quote(a)} -- {_quote(b)}{suffix};")
    lines.append("}")
    return "\n".join(lines) + "\n"
