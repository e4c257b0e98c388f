"""DOT and GraphML exports of the target-induced subgraph.

Nodes are colored by group and edges carry a width scaled by the log of
the link volume, so external tools (Graphviz, Gephi, yEd) reproduce the
usual group-structure picture. Output is deterministic: nodes and edges
are written in sorted order.
"""

from __future__ import annotations

import math
from xml.etree import ElementTree as ET

from .community import induce_target_subgraph
from .graph import TargetGrouping, WebGraphSnapshot

GROUP_PALETTE = (
    "#1f77b4",
    "#ff7f0e",
    "#2ca02c",
    "#d62728",
    "#9467bd",
    "#8c564b",
    "#e377c2",
    "#7f7f7f",
    "#bcbd22",
    "#17becf",
    "#aec7e8",
    "#ffbb78",
)


def group_colors(grouping: TargetGrouping) -> dict[str, str]:
    """Stable group -> hex color assignment (palette cycles if needed)."""
    return {
        group: GROUP_PALETTE[i % len(GROUP_PALETTE)]
        for i, group in enumerate(sorted(grouping.groups))
    }


def _edge_width(count: int) -> float:
    return round(1.0 + math.log1p(count), 4)


def _dq(value: str) -> str:
    """DOT double-quoted string (normalized domains need no escaping)."""
    return '"' + value.replace('"', '\\"') + '"'


def export_dot(graph: WebGraphSnapshot, grouping: TargetGrouping, path) -> None:
    """Write the target-induced subgraph as a Graphviz digraph."""
    sub = induce_target_subgraph(graph, grouping.targets)
    colors = group_colors(grouping)
    lines = ["digraph backlinks {", "  node [style=filled];"]
    for node in sorted(grouping.targets):
        group = grouping.group_of(node)
        lines.append(
            f"  {_dq(node)} [fillcolor={_dq(colors[group])}, group={_dq(group)}];"
        )
    for src, tgt, count in sorted(sub.iter_edges()):
        lines.append(
            f"  {_dq(src)} -> {_dq(tgt)} "
            f"[penwidth={_edge_width(count)}, label={_dq(str(count))}];"
        )
    lines.append("}")
    with open(path, "w", encoding="utf-8") as handle:
        handle.write("\n".join(lines) + "\n")


def export_graphml(graph: WebGraphSnapshot, grouping: TargetGrouping, path) -> None:
    """Write the target-induced subgraph as GraphML with typed attributes."""
    sub = induce_target_subgraph(graph, grouping.targets)
    colors = group_colors(grouping)
    root = ET.Element("graphml", xmlns="http://graphml.graphdrawing.org/xmlns")
    keys = [
        ("d_group", "node", "group", "string"),
        ("d_color", "node", "color", "string"),
        ("d_links", "edge", "links", "int"),
        ("d_width", "edge", "width", "double"),
    ]
    for key_id, domain, name, value_type in keys:
        ET.SubElement(
            root,
            "key",
            id=key_id,
            attrib={"for": domain, "attr.name": name, "attr.type": value_type},
        )
    graph_el = ET.SubElement(root, "graph", id=sub.label, edgedefault="directed")
    for node in sorted(grouping.targets):
        group = grouping.group_of(node)
        node_el = ET.SubElement(graph_el, "node", id=node)
        ET.SubElement(node_el, "data", key="d_group").text = group
        ET.SubElement(node_el, "data", key="d_color").text = colors[group]
    for i, (src, tgt, count) in enumerate(sorted(sub.iter_edges())):
        edge_el = ET.SubElement(graph_el, "edge", id=f"e{i}", source=src, target=tgt)
        ET.SubElement(edge_el, "data", key="d_links").text = str(count)
        ET.SubElement(edge_el, "data", key="d_width").text = str(_edge_width(count))
    ET.indent(root)
    ET.ElementTree(root).write(path, encoding="utf-8", xml_declaration=True)
