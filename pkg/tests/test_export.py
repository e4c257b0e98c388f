"""DOT and GraphML graph exports."""

from xml.etree import ElementTree as ET

from bendweb import TargetGrouping, WebGraphSnapshot, export_dot, export_graphml


def sample():
    grouping = TargetGrouping({"EU": ["a.example", "b.example"], "US": ["c.example"]})
    snap = WebGraphSnapshot(
        "t2",
        {
            ("a.example", "b.example"): 10,
            ("b.example", "c.example"): 3,
            ("a.example", "offsite.example"): 99,  # outside W: excluded
        },
        normalize=False,
    )
    return snap, grouping


def test_dot_structure(tmp_path):
    snap, grouping = sample()
    path = tmp_path / "graph.dot"
    export_dot(snap, grouping, path)
    text = path.read_text(encoding="utf-8")
    assert text.startswith("digraph")
    assert '"a.example" -> "b.example"' in text
    assert "offsite.example" not in text
    assert "penwidth=" in text and "fillcolor=" in text
    # same group, same color; different group, different color
    colors = {
        line.split("fillcolor=")[1].split(",")[0]
        for line in text.splitlines()
        if "fillcolor=" in line
    }
    assert len(colors) == 2


def test_dot_deterministic(tmp_path):
    snap, grouping = sample()
    export_dot(snap, grouping, tmp_path / "a.dot")
    export_dot(snap, grouping, tmp_path / "b.dot")
    assert (tmp_path / "a.dot").read_bytes() == (tmp_path / "b.dot").read_bytes()


def test_graphml_parses_with_attributes(tmp_path):
    snap, grouping = sample()
    path = tmp_path / "graph.graphml"
    export_graphml(snap, grouping, path)
    ns = {"g": "http://graphml.graphdrawing.org/xmlns"}
    root = ET.parse(path).getroot()
    nodes = root.findall(".//g:node", ns)
    edges = root.findall(".//g:edge", ns)
    assert {n.get("id") for n in nodes} == {"a.example", "b.example", "c.example"}
    assert len(edges) == 2  # only in-target edges
    heavy = next(e for e in edges if e.get("source") == "a.example")
    data = {d.get("key"): d.text for d in heavy.findall("g:data", ns)}
    assert data["d_links"] == "10"
    assert float(data["d_width"]) > 1.0


def test_graphml_deterministic(tmp_path):
    snap, grouping = sample()
    export_graphml(snap, grouping, tmp_path / "a.graphml")
    export_graphml(snap, grouping, tmp_path / "b.graphml")
    assert (tmp_path / "a.graphml").read_bytes() == (tmp_path / "b.graphml").read_bytes()
