"""File format loaders, writers, and round trips."""

import json
import random

import pytest

from bendweb import (
    Diagnostics,
    DuplicateDomain,
    DuplicateTarget,
    FileError,
    ParseError,
    WebGraphSnapshot,
    load_baseline,
    load_edges,
    load_grouping,
    load_manifest,
    load_profiles,
    load_snapshots,
    load_targets,
    truncate_backlinks,
    write_edges,
    write_grouping,
    write_manifest,
    write_profiles,
)
from bendweb.diagnostics import SELF_LOOP_DROPPED, UNKNOWN_GROUPING_DOMAIN
from bendweb.graph import TargetGrouping


def _write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return path


class TestLoadEdges:
    def test_normalizes_and_aggregates(self, tmp_path):
        path = _write(tmp_path, "e.csv", "source,target,links\na.com,b.com,3\nA.COM,b.com,2\n")
        snap = load_edges(path)
        assert snap.as_edge_dict() == {("a.com", "b.com"): 5}

    def test_self_loop_dropped_with_warning(self, tmp_path):
        path = _write(tmp_path, "e.csv", "source,target,links\nx.com,x.com,9\n")
        diag = Diagnostics()
        snap = load_edges(path, diagnostics=diag)
        assert snap.num_edges == 0
        assert diag.has(SELF_LOOP_DROPPED)

    def test_bad_count_reports_row(self, tmp_path):
        path = _write(tmp_path, "e.csv", "source,target,links\na.com,b.com,zero\n")
        with pytest.raises(ParseError) as err:
            load_edges(path)
        assert err.value.row == 2

    def test_count_below_one_rejected(self, tmp_path):
        path = _write(tmp_path, "e.csv", "source,target,links\na.com,b.com,0\n")
        with pytest.raises(ParseError):
            load_edges(path)

    def test_too_few_fields(self, tmp_path):
        path = _write(tmp_path, "e.csv", "source,target,links\na.com,b.com\n")
        with pytest.raises(ParseError) as err:
            load_edges(path)
        assert err.value.row == 2

    def test_bad_header(self, tmp_path):
        path = _write(tmp_path, "e.csv", "src,dst,n\na.com,b.com,1\n")
        with pytest.raises(ParseError) as err:
            load_edges(path)
        assert err.value.row == 1

    def test_missing_file(self, tmp_path):
        with pytest.raises(FileError):
            load_edges(tmp_path / "nope.csv")

    def test_comment_lines_skipped_but_counted(self, tmp_path):
        path = _write(
            tmp_path,
            "e.csv",
            "# generated_at 2026-01-01T00:00:00Z\nsource,target,links\na.com,b.com,bad\n",
        )
        with pytest.raises(ParseError) as err:
            load_edges(path)
        assert err.value.row == 3

    def test_label_defaults_to_stem(self, tmp_path):
        path = _write(tmp_path, "march.csv", "source,target,links\na.com,b.com,1\n")
        assert load_edges(path).label == "march"
        assert load_edges(path, label="t1").label == "t1"

    def test_row_order_irrelevant(self, tmp_path):
        rng = random.Random(5)
        rows = [f"s{i}.com,t{i % 3}.com,{rng.randint(1, 9)}" for i in range(30)]
        p1 = _write(tmp_path, "a.csv", "source,target,links\n" + "\n".join(rows))
        rng.shuffle(rows)
        p2 = _write(tmp_path, "b.csv", "source,target,links\n" + "\n".join(rows))
        assert load_edges(p1, label="x") == load_edges(p2, label="x")


class TestLoadProfiles:
    def test_basic_and_optional_rating(self, tmp_path):
        path = _write(tmp_path, "p.csv", "domain,domain_rating\na.com,31\nb.com,\n")
        profiles = load_profiles(path)
        assert profiles["a.com"].domain_rating == 31
        assert profiles["b.com"].domain_rating is None

    def test_out_of_range_rating(self, tmp_path):
        path = _write(tmp_path, "p.csv", "domain,domain_rating\na.com,140\n")
        with pytest.raises(ParseError):
            load_profiles(path)

    def test_duplicate_domain(self, tmp_path):
        path = _write(tmp_path, "p.csv", "domain,domain_rating\na.com,1\nWWW.A.COM,2\n")
        with pytest.raises(DuplicateDomain):
            load_profiles(path)


class TestLoadGrouping:
    def test_basic(self, tmp_path):
        path = _write(tmp_path, "g.csv", "domain,group\na.com,EU\nb.com,EU\nc.com,US\n")
        grouping = load_grouping(path)
        assert grouping.members_of("EU") == {"a.com", "b.com"}
        assert grouping.members_of("US") == {"c.com"}

    def test_duplicate_target(self, tmp_path):
        path = _write(tmp_path, "g.csv", "domain,group\na.com,EU\na.com,US\n")
        with pytest.raises(DuplicateTarget):
            load_grouping(path)

    def test_empty_body(self, tmp_path):
        path = _write(tmp_path, "g.csv", "domain,group\n")
        with pytest.raises(ParseError):
            load_grouping(path)

    def test_unknown_domain_warns_but_keeps(self, tmp_path):
        path = _write(tmp_path, "g.csv", "domain,group\na.com,EU\nghost.com,EU\n")
        diag = Diagnostics()
        grouping = load_grouping(path, universe={"a.com"}, diagnostics=diag)
        assert "ghost.com" in grouping
        assert diag.has(UNKNOWN_GROUPING_DOMAIN)


class TestLoadTargets:
    def test_basic_dedupe(self, tmp_path):
        path = _write(tmp_path, "t.csv", "domain\na.com\nWWW.A.COM\nb.com\n")
        assert load_targets(path) == ["a.com", "b.com"]

    def test_empty(self, tmp_path):
        path = _write(tmp_path, "t.csv", "domain\n")
        with pytest.raises(ParseError):
            load_targets(path)


class TestLoadBaseline:
    def test_basic(self, tmp_path):
        path = _write(
            tmp_path, "b.csv", "domain,metric,value\na.com,back,0.5\na.com,narrow,1\n"
        )
        table = load_baseline(path)
        assert table[("a.com", "back")] == 0.5
        assert table[("a.com", "narrow")] == 1.0

    def test_unknown_metric(self, tmp_path):
        path = _write(tmp_path, "b.csv", "domain,metric,value\na.com,magic,0.5\n")
        with pytest.raises(ParseError):
            load_baseline(path)

    def test_normalize_per_metric(self, tmp_path):
        path = _write(
            tmp_path,
            "b.csv",
            "domain,metric,value\na.com,back,2\nb.com,back,4\nc.com,back,6\n",
        )
        table = load_baseline(path, normalize=True)
        assert table[("a.com", "back")] == 0.0
        assert table[("b.com", "back")] == 0.5
        assert table[("c.com", "back")] == 1.0


class TestManifest:
    def test_roundtrip_and_relative_paths(self, tmp_path):
        _write(tmp_path, "e1.csv", "source,target,links\na.com,b.com,1\n")
        _write(tmp_path, "e2.csv", "source,target,links\na.com,b.com,2\n")
        write_manifest(
            tmp_path / "manifest.json",
            snapshot_files=[("t1", "e1.csv"), ("t2", "e2.csv")],
        )
        manifest = load_manifest(tmp_path / "manifest.json")
        assert manifest.labels() == ("t1", "t2")
        snaps = load_snapshots(manifest)
        assert snaps["t2"].edge_count("a.com", "b.com") == 2

    def test_duplicate_labels_rejected(self, tmp_path):
        path = _write(
            tmp_path,
            "m.json",
            json.dumps({"snapshots": [{"label": "t", "edges": "x"}, {"label": "t", "edges": "y"}]}),
        )
        with pytest.raises(ParseError):
            load_manifest(path)

    def test_empty_snapshots_rejected(self, tmp_path):
        path = _write(tmp_path, "m.json", json.dumps({"snapshots": []}))
        with pytest.raises(ParseError):
            load_manifest(path)


class TestTruncateBacklinks:
    def _snap(self):
        return WebGraphSnapshot(
            "t",
            [
                ("a.com", "t.com", 5),
                ("b.com", "t.com", 3),
                ("c.com", "t.com", 1),
                ("x.com", "y.com", 7),
            ],
        )

    def test_top_n(self):
        out = truncate_backlinks(self._snap(), {"t.com"}, 2)
        assert dict(out.sources_of("t.com")) == {"a.com": 5, "b.com": 3}
        # edges to non-targets untouched
        assert out.edge_count("x.com", "y.com") == 7

    def test_tie_breaks_lexicographic(self):
        snap = WebGraphSnapshot("t", [("b.com", "t.com", 3), ("a.com", "t.com", 3)])
        out = truncate_backlinks(snap, {"t.com"}, 1)
        assert dict(out.sources_of("t.com")) == {"a.com": 3}

    def test_identity_when_n_large(self):
        snap = self._snap()
        out = truncate_backlinks(snap, {"t.com"}, 10)
        assert out == snap

    def test_idempotent_and_never_increases(self):
        rng = random.Random(2)
        for _ in range(30):
            edges = [
                (f"s{i}.com", f"t{rng.randrange(3)}.com", rng.randint(1, 9))
                for i in range(25)
            ]
            snap = WebGraphSnapshot("t", edges)
            targets = {"t0.com", "t1.com", "t2.com"}
            n = rng.randint(1, 6)
            once = truncate_backlinks(snap, targets, n)
            twice = truncate_backlinks(once, targets, n)
            assert once == twice
            for t in targets:
                before = sum(snap.sources_of(t).values())
                after = sum(once.sources_of(t).values())
                assert after <= before

    def test_bad_n(self):
        with pytest.raises(ValueError):
            truncate_backlinks(self._snap(), {"t.com"}, 0)


class TestWriters:
    def test_edges_roundtrip(self, tmp_path):
        rng = random.Random(9)
        edges = [(f"s{i}.com", f"t{i % 4}.com", rng.randint(1, 99)) for i in range(40)]
        snap = WebGraphSnapshot("t1", edges)
        write_edges(snap, tmp_path / "out.csv")
        again = load_edges(tmp_path / "out.csv", label="t1")
        assert again == snap

    def test_profiles_roundtrip(self, tmp_path):
        from bendweb import DomainProfile

        profiles = {
            "a.com": DomainProfile("a.com", 31),
            "b.com": DomainProfile("b.com", None),
        }
        write_profiles(profiles, tmp_path / "p.csv")
        assert load_profiles(tmp_path / "p.csv") == profiles

    def test_grouping_roundtrip(self, tmp_path):
        grouping = TargetGrouping({"EU": ["a.com", "b.com"], "US": ["c.com"]})
        write_grouping(grouping, tmp_path / "g.csv")
        assert load_grouping(tmp_path / "g.csv") == grouping
