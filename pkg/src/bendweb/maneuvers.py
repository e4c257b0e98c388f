"""The eight community maneuver scores for target websites.

Four scores describe structure building around a target (back, build,
bridge, boost), four describe erosion (negate, neutralize, narrow,
neglect). Back, build, bridge and boost read a single snapshot plus the
grouping; negate additionally needs domain authority profiles; narrow
needs only the snapshot; neutralize and neglect compare two snapshots
(t1 earlier, t2 later).

All functions are pure over immutable inputs. Degenerate inputs produce
documented conventional values plus a diagnostic flag instead of
raising: a target with no backlinks has nothing to take an entropy or
an authority expectation over, but the pipeline must still emit a row
for it.

Scores and their exact definitions (W is the target set, c the group of
target w, B the backlink source set of w, links(a -> b) the stored
count):

* back       = sum of links(w -> j) for j in c, j != w,
               over 1 + sum of links(w -> k) for k in W, k != w
* build      = mean Jaccard similarity of B(w) with B(j) over group
               mates j (source sets, volumes ignored); 0 for singleton
               groups; a pair of empty sets counts as 0
* bridge     = like back but the numerator sums links to targets
               *outside* the group; back + bridge share a denominator
* boost      = co-amplified inbound volume over 1 + total inbound
               volume, where a source co-amplifies if it links to at
               least one other member of w's group
* negate     = 1 - (link-weighted mean rating of B(w)) / 100; sources
               without a rating are excluded from both numerator and
               denominator and reported as a coverage flag; no rated
               sources at all gives 1 with a flag
* neutralize = clamped in-group link loss over 1 + clamped total link
               loss between t1 and t2, losses measured per source with
               gains ignored and B(w) taken at t1
* narrow     = 1 - H(p) / ln|B| where p is the inbound volume
               distribution and H is Shannon entropy; |B| = 0 gives 0
               with a flag, |B| = 1 gives 1
* neglect    = clamped total link loss over max(1, total inbound volume
               at t2); >= 0 and unbounded above
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, Optional

from .diagnostics import (
    NARROW_NO_BACKLINKS,
    NEGATE_NO_RATED_BACKLINKS,
    NEGATE_PARTIAL_COVERAGE,
    NEGLECT_ZERO_T2_TOTAL,
    TEMPORAL_UNAVAILABLE,
    Diagnostics,
)
from .errors import MissingSnapshot
from .graph import (
    DomainId,
    DomainProfile,
    TargetGrouping,
    WebGraphSnapshot,
    backlinks_of,
    outlinks_to_targets,
)

METRIC_NAMES = (
    "back",
    "build",
    "bridge",
    "boost",
    "negate",
    "neutralize",
    "narrow",
    "neglect",
)

STATIC_METRICS = ("back", "build", "bridge", "boost", "negate", "narrow")
TEMPORAL_METRICS = ("neutralize", "neglect")


@dataclass(frozen=True)
class MetricVector:
    """All eight scores for one target.

    ``neutralize`` and ``neglect`` are None when no earlier snapshot was
    available; unavailable is distinct from zero. ``provenance`` lists
    the snapshot labels the scores were computed from.
    """

    target: DomainId
    back: float
    build: float
    bridge: float
    boost: float
    negate: float
    narrow: float
    neutralize: Optional[float]
    neglect: Optional[float]
    provenance: tuple[str, ...] = ()

    def value(self, metric: str) -> Optional[float]:
        if metric not in METRIC_NAMES:
            raise KeyError(metric)
        return getattr(self, metric)

    def as_dict(self) -> dict[str, Optional[float]]:
        return {name: getattr(self, name) for name in METRIC_NAMES}


@dataclass(frozen=True)
class DeltaView:
    """Per-source backlink losses of one target between two snapshots.

    ``per_source_loss[b] = max(0, links_t1(b -> w) - links_t2(b -> w))``
    for every source that linked to w at t1. Sources appearing only at
    t2 are gains, not losses, and are absent (loss 0).
    """

    target: DomainId
    per_source_loss: Mapping[DomainId, int]

    def loss_of(self, source: DomainId) -> int:
        return self.per_source_loss.get(source, 0)

    @property
    def total_loss(self) -> int:
        return sum(self.per_source_loss.values())


def delta_view(
    t1: WebGraphSnapshot, t2: WebGraphSnapshot, target: DomainId
) -> DeltaView:
    """Clamped per-source link losses for ``target`` from t1 to t2."""
    losses = {
        src: max(0, count - t2.edge_count(src, target))
        for src, count in t1.sources_of(target).items()
    }
    return DeltaView(target=target, per_source_loss=losses)


def _outlink_sums(
    graph: WebGraphSnapshot, grouping: TargetGrouping, w: DomainId
) -> tuple[int, int]:
    """(in-group, out-group) outlink volumes from w to other targets."""
    in_group, out_group = outlinks_to_targets(graph, w, grouping)
    return sum(in_group.values()), sum(out_group.values())


def back(graph: WebGraphSnapshot, grouping: TargetGrouping, w: DomainId) -> float:
    """In-group share of w's outlink volume to other targets, smoothed."""
    s_in, s_out = _outlink_sums(graph, grouping, w)
    return s_in / (1 + s_in + s_out)


def bridge(graph: WebGraphSnapshot, grouping: TargetGrouping, w: DomainId) -> float:
    """Out-group share of w's outlink volume to other targets, smoothed."""
    s_in, s_out = _outlink_sums(graph, grouping, w)
    return s_out / (1 + s_in + s_out)


def _jaccard(a: frozenset, b: frozenset) -> float:
    union = len(a | b)
    if union == 0:
        return 0.0
    return len(a & b) / union


def build(graph: WebGraphSnapshot, grouping: TargetGrouping, w: DomainId) -> float:
    """Mean backlink-source overlap with group mates (set Jaccard)."""
    mates = grouping.mates_of(w)  # raises UnknownTarget
    if not mates:
        return 0.0
    own = frozenset(graph.sources_of(w))
    total = sum(_jaccard(own, frozenset(graph.sources_of(mate))) for mate in mates)
    return total / len(mates)


def boost(graph: WebGraphSnapshot, grouping: TargetGrouping, w: DomainId) -> float:
    """Share of w's inbound volume arriving from in-group co-amplifiers.

    A source co-amplifies when it links to at least one *other* member
    of w's group; such sources may themselves be targets.
    """
    mates = grouping.mates_of(w)  # raises UnknownTarget
    view = backlinks_of(graph, w)
    co_amplified = sum(
        count
        for source, count in view.sources.items()
        if any(graph.edge_count(source, mate) > 0 for mate in mates)
    )
    return co_amplified / (1 + view.total_inlinks)


def negate(
    graph: WebGraphSnapshot,
    profiles: Mapping[DomainId, DomainProfile],
    w: DomainId,
    diagnostics: Optional[Diagnostics] = None,
) -> float:
    """One minus the normalized link-weighted mean authority of B(w)."""
    view = backlinks_of(graph, w)
    rated_links = 0
    unrated_links = 0
    weighted = 0
    for source, count in view.sources.items():
        profile = profiles.get(source)
        rating = profile.domain_rating if profile is not None else None
        if rating is None:
            unrated_links += count
        else:
            rated_links += count
            weighted += rating * count
    if rated_links == 0:
        if diagnostics is not None:
            diagnostics.flag(
                NEGATE_NO_RATED_BACKLINKS,
                f"{w}: no rated backlink sources, negate defaults to 1",
                target=w,
                unrated_links=unrated_links,
            )
        return 1.0
    if unrated_links and diagnostics is not None:
        diagnostics.flag(
            NEGATE_PARTIAL_COVERAGE,
            f"{w}: {unrated_links} of {rated_links + unrated_links} inbound links"
            " lack a rating and were excluded",
            target=w,
            rated_links=rated_links,
            unrated_links=unrated_links,
            coverage=rated_links / (rated_links + unrated_links),
        )
    return 1.0 - weighted / (100.0 * rated_links)


def neutralize(
    t1: WebGraphSnapshot,
    t2: WebGraphSnapshot,
    grouping: TargetGrouping,
    w: DomainId,
) -> float:
    """In-group share of w's backlink losses between t1 and t2, smoothed."""
    group = grouping.members_of(grouping.group_of(w))  # raises UnknownTarget
    deltas = delta_view(t1, t2, w)
    in_group_loss = sum(deltas.loss_of(member) for member in group)
    return in_group_loss / (1 + deltas.total_loss)


def narrow(
    graph: WebGraphSnapshot,
    w: DomainId,
    diagnostics: Optional[Diagnostics] = None,
) -> float:
    """Concentration of w's inbound volume: 1 - normalized entropy."""
    view = backlinks_of(graph, w)
    n = len(view)
    if n == 0:
        if diagnostics is not None:
            diagnostics.flag(
                NARROW_NO_BACKLINKS,
                f"{w}: no backlink sources, narrow defaults to 0",
                target=w,
            )
        return 0.0
    if n == 1:
        # a single dominant source is maximal concentration
        return 1.0
    total = view.total_inlinks
    entropy = -sum(
        (count / total) * math.log(count / total) for count in view.sources.values()
    )
    return 1.0 - entropy / math.log(n)


def neglect(
    t1: WebGraphSnapshot,
    t2: WebGraphSnapshot,
    w: DomainId,
    diagnostics: Optional[Diagnostics] = None,
) -> float:
    """Backlink volume lost since t1, relative to what remains at t2."""
    deltas = delta_view(t1, t2, w)
    t2_total = backlinks_of(t2, w).total_inlinks
    if t2_total == 0:
        if diagnostics is not None:
            diagnostics.flag(
                NEGLECT_ZERO_T2_TOTAL,
                f"{w}: no inbound links at {t2.label}, denominator clamped to 1",
                target=w,
                total_loss=deltas.total_loss,
            )
        return float(deltas.total_loss)
    return deltas.total_loss / t2_total


def compute_all(
    t2: WebGraphSnapshot,
    grouping: TargetGrouping,
    profiles: Mapping[DomainId, DomainProfile],
    t1: Optional[WebGraphSnapshot] = None,
    *,
    require_temporal: bool = False,
    diagnostics: Optional[Diagnostics] = None,
) -> list[MetricVector]:
    """Compute every score for every target, ordered by target domain.

    Static scores are evaluated on t2; neutralize and neglect compare
    t1 against t2 and come back as None (unavailable, not zero) when t1
    is missing. ``require_temporal=True`` turns a missing t1 into a
    :class:`MissingSnapshot` error instead.
    """
    if require_temporal and t1 is None:
        raise MissingSnapshot("temporal metrics requested but no earlier snapshot given")
    if t1 is None and diagnostics is not None:
        diagnostics.warn(
            TEMPORAL_UNAVAILABLE,
            "no earlier snapshot: neutralize and neglect are unavailable",
        )
    provenance = (t2.label,) if t1 is None else (t1.label, t2.label)
    vectors = []
    for w in sorted(grouping.targets):
        vectors.append(
            MetricVector(
                target=w,
                back=back(t2, grouping, w),
                build=build(t2, grouping, w),
                bridge=bridge(t2, grouping, w),
                boost=boost(t2, grouping, w),
                negate=negate(t2, profiles, w, diagnostics=diagnostics),
                narrow=narrow(t2, w, diagnostics=diagnostics),
                neutralize=None if t1 is None else neutralize(t1, t2, grouping, w),
                neglect=None if t1 is None else neglect(t1, t2, w, diagnostics=diagnostics),
                provenance=provenance,
            )
        )
    return vectors
