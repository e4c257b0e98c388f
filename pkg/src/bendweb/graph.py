"""Core immutable data structures for backlink webgraphs.

A snapshot is a directed multigraph aggregate over registrable domains:
for each ordered (source, target) pair it stores how many hyperlinks
pointed from source to target during one time period. Targets under
analysis are collected in a :class:`TargetGrouping`, a partition of the
target set into named groups.

All structures are immutable after construction and safe to read from
concurrent workers.
"""

from __future__ import annotations

from dataclasses import dataclass
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping, Optional, Union

from .diagnostics import SELF_LOOP_DROPPED, Diagnostics
from .errors import UnknownTarget

DomainId = str
GroupId = str

EdgeInput = Union[
    Mapping[tuple[DomainId, DomainId], int],
    Iterable[tuple[DomainId, DomainId, int]],
]


def normalize_domain(raw: str) -> str:
    """Normalize a raw domain string to its canonical registrable form.

    Lowercases, strips scheme / userinfo / port / path / query /
    fragment, drops trailing dots and any leading ``www.`` labels.
    Idempotent: ``normalize_domain(normalize_domain(x)) ==
    normalize_domain(x)``. Returns an empty string for inputs that
    contain no domain at all; callers decide whether that is an error.
    """
    s = raw.strip().lower()
    if "://" in s:
        s = s.split("://", 1)[1]
    for sep in ("/", "?", "#"):
        if sep in s:
            s = s.split(sep, 1)[0]
    if "@" in s:
        s = s.rsplit("@", 1)[1]
    if ":" in s:
        s = s.split(":", 1)[0]
    # strip every leading www. label (and dots it may expose), not just
    # the first, so re-normalizing an already normalized name is a no-op
    s = s.strip(".")
    while True:
        s = s.lstrip(".")
        if s.startswith("www."):
            s = s[4:]
        else:
            break
    return s.strip(".")


class WebGraphSnapshot:
    """Directed weighted link-count graph for one time period.

    Edges with the same (source, target) pair are aggregated by
    summation. Self-links are dropped at construction (recorded as a
    warning when a diagnostics collector is supplied). Zero-count
    edges are never stored; querying an absent edge returns 0.
    """

    __slots__ = ("label", "_out", "_in", "_domains", "_edge_count", "_total_links")

    def __init__(
        self,
        label: str,
        edges: EdgeInput = (),
        *,
        normalize: bool = True,
        diagnostics: Optional[Diagnostics] = None,
    ) -> None:
        self.label = label
        out: dict[DomainId, dict[DomainId, int]] = {}
        inc: dict[DomainId, dict[DomainId, int]] = {}
        if isinstance(edges, Mapping):
            items: Iterable[tuple[DomainId, DomainId, int]] = (
                (s, t, c) for (s, t), c in edges.items()
            )
        else:
            items = edges
        for src, tgt, count in items:
            if normalize:
                src = normalize_domain(src)
                tgt = normalize_domain(tgt)
            if not src or not tgt:
                raise ValueError(f"empty domain in edge ({src!r} -> {tgt!r})")
            count = int(count)
            if count < 0:
                raise ValueError(f"negative link count on edge ({src} -> {tgt}): {count}")
            if count == 0:
                continue
            if src == tgt:
                if diagnostics is not None:
                    diagnostics.warn(
                        SELF_LOOP_DROPPED,
                        f"dropped self-link on {src}",
                        domain=src,
                        count=count,
                    )
                continue
            out.setdefault(src, {})
            out[src][tgt] = out[src].get(tgt, 0) + count
            inc.setdefault(tgt, {})
            inc[tgt][src] = inc[tgt].get(src, 0) + count
        self._out = out
        self._in = inc
        self._domains = frozenset(out) | frozenset(inc)
        self._edge_count = sum(len(d) for d in out.values())
        self._total_links = sum(c for d in out.values() for c in d.values())

    def edge_count(self, source: DomainId, target: DomainId) -> int:
        """Number of links from source to target; 0 when absent."""
        return self._out.get(source, {}).get(target, 0)

    def sources_of(self, target: DomainId) -> Mapping[DomainId, int]:
        """Read-only view of {source: count} for links pointing at target."""
        return MappingProxyType(self._in.get(target, {}))

    def targets_of(self, source: DomainId) -> Mapping[DomainId, int]:
        """Read-only view of {target: count} for links leaving source."""
        return MappingProxyType(self._out.get(source, {}))

    def domains(self) -> frozenset[DomainId]:
        return self._domains

    def iter_edges(self) -> Iterator[tuple[DomainId, DomainId, int]]:
        for src, targets in self._out.items():
            for tgt, count in targets.items():
                yield src, tgt, count

    def as_edge_dict(self) -> dict[tuple[DomainId, DomainId], int]:
        return {(s, t): c for s, t, c in self.iter_edges()}

    @property
    def num_edges(self) -> int:
        return self._edge_count

    @property
    def total_links(self) -> int:
        return self._total_links

    def __contains__(self, domain: DomainId) -> bool:
        return domain in self._domains

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, WebGraphSnapshot):
            return NotImplemented
        return self.label == other.label and self._out == other._out

    def __repr__(self) -> str:
        return (
            f"WebGraphSnapshot({self.label!r}, domains={len(self._domains)}, "
            f"edges={self._edge_count})"
        )


@dataclass(frozen=True)
class BacklinkView:
    """All inbound link sources of one target, with volumes."""

    target: DomainId
    sources: Mapping[DomainId, int]
    total_inlinks: int

    def count_from(self, source: DomainId) -> int:
        return self.sources.get(source, 0)

    def __len__(self) -> int:
        return len(self.sources)


def backlinks_of(graph: WebGraphSnapshot, target: DomainId) -> BacklinkView:
    """Collect every source with at least one link to ``target``.

    A target absent from the graph yields an empty view with
    ``total_inlinks == 0``.
    """
    sources = dict(graph.sources_of(target))
    return BacklinkView(target=target, sources=sources, total_inlinks=sum(sources.values()))


class TargetGrouping:
    """The target set W and its partition into disjoint named groups.

    Construction validates the partition invariants: every group is
    non-empty, no domain belongs to two groups, and the union of the
    groups is exactly the target set.
    """

    __slots__ = ("_targets", "_group_of", "_groups")

    def __init__(self, groups: Mapping[GroupId, Iterable[DomainId]]) -> None:
        group_of: dict[DomainId, GroupId] = {}
        frozen: dict[GroupId, frozenset[DomainId]] = {}
        ordered: list[DomainId] = []
        for gid, members in groups.items():
            member_list = [normalize_domain(m) for m in members]
            if not member_list:
                raise ValueError(f"group {gid!r} is empty")
            for m in member_list:
                if not m:
                    raise ValueError(f"group {gid!r} contains an empty domain")
                if m in group_of:
                    raise ValueError(f"domain {m} assigned to both {group_of[m]!r} and {gid!r}")
                group_of[m] = gid
                ordered.append(m)
            frozen[gid] = frozenset(member_list)
        if not ordered:
            raise ValueError("grouping has no targets")
        self._targets = tuple(ordered)
        self._group_of = group_of
        self._groups = frozen

    @property
    def targets(self) -> tuple[DomainId, ...]:
        return self._targets

    @property
    def groups(self) -> Mapping[GroupId, frozenset[DomainId]]:
        return MappingProxyType(self._groups)

    def group_of(self, domain: DomainId) -> GroupId:
        try:
            return self._group_of[domain]
        except KeyError:
            raise UnknownTarget(f"{domain} is not in the target set") from None

    def members_of(self, group: GroupId) -> frozenset[DomainId]:
        return self._groups[group]

    def mates_of(self, domain: DomainId) -> frozenset[DomainId]:
        """Other members of ``domain``'s own group (itself excluded)."""
        return self._groups[self.group_of(domain)] - {domain}

    def __contains__(self, domain: DomainId) -> bool:
        return domain in self._group_of

    def __len__(self) -> int:
        return len(self._targets)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TargetGrouping):
            return NotImplemented
        return self._groups == other._groups

    def __repr__(self) -> str:
        return f"TargetGrouping(targets={len(self._targets)}, groups={len(self._groups)})"


@dataclass(frozen=True)
class DomainProfile:
    """Per-domain attributes; currently the 0-100 authority rating."""

    domain: DomainId
    domain_rating: Optional[int] = None

    def __post_init__(self) -> None:
        if self.domain_rating is not None and not 0 <= self.domain_rating <= 100:
            raise ValueError(
                f"domain_rating for {self.domain} out of [0, 100]: {self.domain_rating}"
            )


def outlinks_to_targets(
    graph: WebGraphSnapshot,
    source: DomainId,
    grouping: TargetGrouping,
) -> tuple[dict[DomainId, int], dict[DomainId, int]]:
    """Partition a target's outlinks to *other targets* by group membership.

    Returns ``(in_group, out_group)`` count maps. Links to domains
    outside the target set are ignored, as is the source itself.
    Raises :class:`UnknownTarget` if ``source`` is not a target.
    """
    own_group = grouping.group_of(source)  # raises UnknownTarget
    in_group: dict[DomainId, int] = {}
    out_group: dict[DomainId, int] = {}
    for tgt, count in graph.targets_of(source).items():
        if tgt == source or tgt not in grouping:
            continue
        if grouping.group_of(tgt) == own_group:
            in_group[tgt] = count
        else:
            out_group[tgt] = count
    return in_group, out_group
