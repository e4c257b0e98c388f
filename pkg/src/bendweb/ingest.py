"""Loaders and writers for the on-disk dataset formats.

All tabular formats are UTF-8 CSV with a required header row. Lines
whose first character is ``#`` are comments (report writers emit an
optional ``# generated_at`` line) and are skipped everywhere, but they
still count toward the 1-based row numbers used in error messages.

Formats:

* edge CSV        ``source,target,links``          (links: positive int)
* profile CSV     ``domain,domain_rating``         (rating optional, 0-100)
* grouping CSV    ``domain,group``
* target-list CSV ``domain``
* baseline CSV    ``domain,metric,value``          (metric: one of the 8 scores)
* manifest JSON   ``{"snapshots": [{"label": ..., "edges": path}, ...],
                     "profiles": path, "groups": path}``
                  with paths resolved relative to the manifest file.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator, Mapping, Optional

from .diagnostics import UNKNOWN_GROUPING_DOMAIN, Diagnostics
from .errors import DuplicateDomain, DuplicateTarget, FileError, ParseError
from .graph import (
    DomainId,
    DomainProfile,
    TargetGrouping,
    WebGraphSnapshot,
    normalize_domain,
)
from .maneuvers import METRIC_NAMES

EDGE_HEADER = ("source", "target", "links")
PROFILE_HEADER = ("domain", "domain_rating")
GROUPING_HEADER = ("domain", "group")
TARGETS_HEADER = ("domain",)
BASELINE_HEADER = ("domain", "metric", "value")


@dataclass(frozen=True)
class SnapshotManifest:
    """Index of a dataset: labelled edge files plus optional sidecars."""

    entries: tuple[tuple[str, Path], ...]  # (timestamp label, edge file path)
    profiles_path: Optional[Path] = None
    groups_path: Optional[Path] = None

    def labels(self) -> tuple[str, ...]:
        return tuple(label for label, _ in self.entries)

    def edge_path(self, label: str) -> Path:
        for entry_label, path in self.entries:
            if entry_label == label:
                return path
        raise KeyError(label)


def _read_rows(path) -> Iterator[tuple[int, list[str]]]:
    """Yield (1-based physical row number, parsed fields) for data rows."""
    try:
        with open(path, encoding="utf-8", newline="") as handle:
            lines = handle.readlines()
    except OSError as exc:
        raise FileError(f"cannot read {path}: {exc}") from exc
    for rownum, line in enumerate(lines, start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        fields = next(csv.reader([line]))
        yield rownum, [f.strip() for f in fields]


def _check_header(path, rows, expected: tuple[str, ...]) -> None:
    try:
        rownum, fields = next(rows)
    except StopIteration:
        raise ParseError("empty file, expected header " + ",".join(expected), path=path)
    got = tuple(f.lower() for f in fields[: len(expected)])
    if got != expected:
        raise ParseError(
            f"bad header {','.join(fields)!r}, expected {','.join(expected)!r}",
            path=path,
            row=rownum,
        )


def load_edges(
    path,
    label: Optional[str] = None,
    diagnostics: Optional[Diagnostics] = None,
) -> WebGraphSnapshot:
    """Load an edge CSV into a snapshot.

    Duplicate (source, target) rows aggregate by summation; self-links
    are dropped with a warning; malformed rows raise :class:`ParseError`
    with their row number. ``label`` defaults to the file stem.
    """
    rows = _read_rows(path)
    _check_header(path, rows, EDGE_HEADER)
    edges: list[tuple[str, str, int]] = []
    for rownum, fields in rows:
        if len(fields) < 3:
            raise ParseError(
                f"expected at least 3 fields, got {len(fields)}", path=path, row=rownum
            )
        src = normalize_domain(fields[0])
        tgt = normalize_domain(fields[1])
        if not src or not tgt:
            raise ParseError("empty domain after normalization", path=path, row=rownum)
        try:
            count = int(fields[2])
        except ValueError:
            raise ParseError(f"non-integer link count {fields[2]!r}", path=path, row=rownum)
        if count < 1:
            raise ParseError(f"link count must be >= 1, got {count}", path=path, row=rownum)
        edges.append((src, tgt, count))
    if label is None:
        label = Path(path).stem
    return WebGraphSnapshot(label, edges, normalize=False, diagnostics=diagnostics)


def load_profiles(
    path,
    diagnostics: Optional[Diagnostics] = None,
) -> dict[DomainId, DomainProfile]:
    """Load a profile CSV; one row per domain, rating optional."""
    rows = _read_rows(path)
    _check_header(path, rows, PROFILE_HEADER)
    profiles: dict[DomainId, DomainProfile] = {}
    for rownum, fields in rows:
        if len(fields) < 1 or not fields[0]:
            raise ParseError("missing domain", path=path, row=rownum)
        domain = normalize_domain(fields[0])
        if not domain:
            raise ParseError("empty domain after normalization", path=path, row=rownum)
        if domain in profiles:
            raise DuplicateDomain(f"duplicate domain {domain}", path=path, row=rownum)
        raw_rating = fields[1] if len(fields) > 1 else ""
        rating: Optional[int] = None
        if raw_rating:
            try:
                rating = int(raw_rating)
            except ValueError:
                raise ParseError(
                    f"non-integer domain_rating {raw_rating!r}", path=path, row=rownum
                )
            if not 0 <= rating <= 100:
                raise ParseError(
                    f"domain_rating out of [0, 100]: {rating}", path=path, row=rownum
                )
        profiles[domain] = DomainProfile(domain=domain, domain_rating=rating)
    return profiles


def load_grouping(
    path,
    universe: Optional[Iterable[DomainId]] = None,
    diagnostics: Optional[Diagnostics] = None,
) -> TargetGrouping:
    """Load a grouping CSV into a validated partition.

    Domains listed in the file but absent from ``universe`` (when one
    is given) are kept as targets and reported as warnings: they are a
    data-quality signal, not an error.
    """
    rows = _read_rows(path)
    _check_header(path, rows, GROUPING_HEADER)
    groups: dict[str, list[DomainId]] = {}
    seen: dict[DomainId, str] = {}
    unknown: list[DomainId] = []
    universe_set = frozenset(universe) if universe is not None else None
    count = 0
    for rownum, fields in rows:
        if len(fields) < 2 or not fields[0] or not fields[1]:
            raise ParseError("expected domain,group", path=path, row=rownum)
        domain = normalize_domain(fields[0])
        if not domain:
            raise ParseError("empty domain after normalization", path=path, row=rownum)
        group = fields[1]
        if domain in seen:
            raise DuplicateTarget(
                f"domain {domain} already assigned to group {seen[domain]!r}",
                path=path,
                row=rownum,
            )
        seen[domain] = group
        groups.setdefault(group, []).append(domain)
        if universe_set is not None and domain not in universe_set:
            unknown.append(domain)
        count += 1
    if count == 0:
        raise ParseError("no targets listed", path=path)
    if unknown and diagnostics is not None:
        diagnostics.warn(
            UNKNOWN_GROUPING_DOMAIN,
            f"{len(unknown)} grouped domain(s) never appear in the loaded snapshots",
            domains=sorted(unknown),
        )
    return TargetGrouping(groups)


def load_targets(path) -> list[DomainId]:
    """Load a one-column target list CSV, preserving file order."""
    rows = _read_rows(path)
    _check_header(path, rows, TARGETS_HEADER)
    targets: list[DomainId] = []
    seen: set[DomainId] = set()
    for rownum, fields in rows:
        domain = normalize_domain(fields[0])
        if not domain:
            raise ParseError("empty domain after normalization", path=path, row=rownum)
        if domain not in seen:
            seen.add(domain)
            targets.append(domain)
    if not targets:
        raise ParseError("no targets listed", path=path)
    return targets


def load_baseline(
    path,
    normalize: bool = False,
    diagnostics: Optional[Diagnostics] = None,
) -> dict[tuple[DomainId, str], float]:
    """Load a baseline metric table keyed by (domain, metric).

    With ``normalize=True`` each metric column is min-max rescaled to
    [0, 1] at ingest, for baselines reported on raw-count scales.
    """
    rows = _read_rows(path)
    _check_header(path, rows, BASELINE_HEADER)
    table: dict[tuple[DomainId, str], float] = {}
    for rownum, fields in rows:
        if len(fields) < 3:
            raise ParseError(
                f"expected at least 3 fields, got {len(fields)}", path=path, row=rownum
            )
        domain = normalize_domain(fields[0])
        if not domain:
            raise ParseError("empty domain after normalization", path=path, row=rownum)
        metric = fields[1].lower()
        if metric not in METRIC_NAMES:
            raise ParseError(f"unknown metric {fields[1]!r}", path=path, row=rownum)
        try:
            value = float(fields[2])
        except ValueError:
            raise ParseError(f"non-numeric value {fields[2]!r}", path=path, row=rownum)
        key = (domain, metric)
        if key in table:
            raise DuplicateDomain(
                f"duplicate baseline cell {domain}/{metric}", path=path, row=rownum
            )
        table[key] = value
    if not table:
        raise ParseError("no baseline rows", path=path)
    if normalize:
        from .analysis import min_max_normalize  # local import avoids a cycle

        for metric in METRIC_NAMES:
            cells = {d: v for (d, m), v in table.items() if m == metric}
            if not cells:
                continue
            for domain, value in min_max_normalize(cells, diagnostics=diagnostics).items():
                table[(domain, metric)] = value
    return table


def load_manifest(path) -> SnapshotManifest:
    """Load a manifest JSON; paths resolve relative to the manifest."""
    try:
        with open(path, encoding="utf-8") as handle:
            raw = json.load(handle)
    except OSError as exc:
        raise FileError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}", path=path)
    base = Path(path).resolve().parent
    snapshots = raw.get("snapshots")
    if not isinstance(snapshots, list) or not snapshots:
        raise ParseError("manifest needs a non-empty 'snapshots' list", path=path)
    entries: list[tuple[str, Path]] = []
    labels: set[str] = set()
    for item in snapshots:
        if not isinstance(item, dict) or "label" not in item or "edges" not in item:
            raise ParseError("each snapshot needs 'label' and 'edges'", path=path)
        label = str(item["label"])
        if label in labels:
            raise ParseError(f"duplicate snapshot label {label!r}", path=path)
        labels.add(label)
        entries.append((label, base / str(item["edges"])))
    profiles_path = base / str(raw["profiles"]) if raw.get("profiles") else None
    groups_path = base / str(raw["groups"]) if raw.get("groups") else None
    return SnapshotManifest(
        entries=tuple(entries),
        profiles_path=profiles_path,
        groups_path=groups_path,
    )


def load_snapshots(
    manifest: SnapshotManifest,
    diagnostics: Optional[Diagnostics] = None,
) -> dict[str, WebGraphSnapshot]:
    """Load every edge file listed in a manifest, keyed by label."""
    return {
        label: load_edges(path, label=label, diagnostics=diagnostics)
        for label, path in manifest.entries
    }


def truncate_backlinks(
    graph: WebGraphSnapshot,
    targets: Iterable[DomainId],
    top_n: int,
) -> WebGraphSnapshot:
    """Keep only each target's top_n sources by link count.

    Ties break by lexicographic source name, ascending. Edges whose
    target is not in ``targets`` pass through untouched. Emulates the
    per-site truncation of commercial backlink exports; idempotent for
    a fixed top_n.
    """
    if top_n < 1:
        raise ValueError(f"top_n must be >= 1, got {top_n}")
    target_set = frozenset(targets)
    kept: dict[tuple[DomainId, DomainId], int] = {}
    for tgt in target_set:
        ranked = sorted(graph.sources_of(tgt).items(), key=lambda kv: (-kv[1], kv[0]))
        for src, count in ranked[:top_n]:
            kept[(src, tgt)] = count
    for src, tgt, count in graph.iter_edges():
        if tgt not in target_set:
            kept[(src, tgt)] = count
    return WebGraphSnapshot(graph.label, kept, normalize=False)


# ---------------------------------------------------------------------------
# Writers (deterministic row order; outputs reload to identical objects)
# ---------------------------------------------------------------------------


def write_edges(snapshot: WebGraphSnapshot, path) -> None:
    rows = sorted(snapshot.iter_edges())
    with open(path, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(EDGE_HEADER)
        for src, tgt, count in rows:
            writer.writerow([src, tgt, count])


def write_profiles(profiles: Mapping[DomainId, DomainProfile], path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(PROFILE_HEADER)
        for domain in sorted(profiles):
            rating = profiles[domain].domain_rating
            writer.writerow([domain, "" if rating is None else rating])


def write_grouping(grouping: TargetGrouping, path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(GROUPING_HEADER)
        for domain in sorted(grouping.targets):
            writer.writerow([domain, grouping.group_of(domain)])


def write_manifest(
    path,
    snapshot_files: Iterable[tuple[str, str]],
    profiles_file: Optional[str] = None,
    groups_file: Optional[str] = None,
) -> None:
    """Write a manifest JSON with paths relative to the manifest itself."""
    payload: dict = {
        "snapshots": [
            {"label": label, "edges": edges} for label, edges in snapshot_files
        ]
    }
    if profiles_file:
        payload["profiles"] = profiles_file
    if groups_file:
        payload["groups"] = groups_file
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(payload, handle, indent=2)
        handle.write("\n")
