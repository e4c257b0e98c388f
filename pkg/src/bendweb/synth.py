"""Synthetic webgraph scenarios with planted manipulation patterns.

Real backlink exports are proprietary, so face validity is checked on
generated graphs instead: a background of independent backlinking
domains plus one or more planted structures whose signature a specific
score should pick up.

Planted kinds and the score each one should raise for its group:

* ``link_farm``        every group member links every other member at a
                       fixed volume (a directed clique)          -> back
* ``link_scheme``      auxiliary amplifier domains each backlink two or
                       more members of the group                 -> boost
* ``co_amplification`` alias of link_scheme (the amplifiers *are* the
                       co-amplifiers)                            -> boost
* ``toxic_backlinks``  low-authority sources pile links onto the
                       group's members                           -> negate
* ``decay``            the second snapshot drops a fraction of every
                       inbound link to the group, floor-rounded
                       per edge                                  -> neglect

Generation is deterministic for a fixed spec: same seed, same bytes.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from .errors import FileError, ParseError, SpecError
from .graph import DomainId, DomainProfile, TargetGrouping, WebGraphSnapshot
from .ingest import write_edges, write_grouping, write_manifest, write_profiles

PLANTED_KINDS = (
    "link_farm",
    "link_scheme",
    "co_amplification",
    "toxic_backlinks",
    "decay",
)

# documented default intensities (used when a maneuver omits the knob)
DEFAULT_FARM_VOLUME = 50
DEFAULT_SCHEME_VOLUME = 20
DEFAULT_TOXIC_VOLUME = 5
BACKGROUND_RATING_RANGE = (30, 70)
BACKGROUND_VOLUME_RANGE = (1, 5)


@dataclass(frozen=True)
class PlantedManeuver:
    """One planted structure aimed at a single group.

    ``volume`` defaults per kind: 50 for link_farm, 20 for link_scheme
    and co_amplification, 5 for toxic_backlinks. ``amplifiers``,
    ``sources``, ``rating_range`` and ``fraction`` only apply to the
    kinds that use them.
    """

    kind: str
    group: str
    volume: Optional[int] = None
    amplifiers: int = 12
    sources: int = 12
    rating_range: tuple[int, int] = (0, 20)
    fraction: float = 0.5

    def validate(self) -> None:
        if self.kind not in PLANTED_KINDS:
            raise SpecError(f"unknown planted kind {self.kind!r}")
        if self.volume is not None and self.volume < 1:
            raise SpecError(f"{self.kind}: volume must be >= 1, got {self.volume}")
        if self.kind in ("link_scheme", "co_amplification") and self.amplifiers < 1:
            raise SpecError(f"{self.kind}: amplifiers must be >= 1")
        if self.kind == "toxic_backlinks":
            if self.sources < 1:
                raise SpecError("toxic_backlinks: sources must be >= 1")
            lo, hi = self.rating_range
            if not (0 <= lo <= hi <= 100):
                raise SpecError(
                    f"toxic_backlinks: rating_range {self.rating_range} not within [0, 100]"
                )
        if self.kind == "decay" and not 0.0 <= self.fraction <= 1.0:
            raise SpecError(f"decay: fraction must be in [0, 1], got {self.fraction}")

    def resolved_volume(self) -> int:
        if self.volume is not None:
            return self.volume
        if self.kind == "link_farm":
            return DEFAULT_FARM_VOLUME
        if self.kind in ("link_scheme", "co_amplification"):
            return DEFAULT_SCHEME_VOLUME
        return DEFAULT_TOXIC_VOLUME

    def describe(self) -> str:
        if self.kind == "link_farm":
            return f"link_farm on {self.group}: internal volume {self.resolved_volume()}"
        if self.kind in ("link_scheme", "co_amplification"):
            return (
                f"{self.kind} on {self.group}: {self.amplifiers} amplifiers"
                f" at volume {self.resolved_volume()}"
            )
        if self.kind == "toxic_backlinks":
            lo, hi = self.rating_range
            return (
                f"toxic_backlinks on {self.group}: {self.sources} sources"
                f" rated [{lo}, {hi}] at volume {self.resolved_volume()}"
            )
        return f"decay on {self.group}: fraction {self.fraction}"


@dataclass(frozen=True)
class ScenarioSpec:
    seed: int = 0
    n_targets: int = 12
    n_groups: int = 3
    background_backlinkers: int = 30
    background_link_rate: float = 0.2
    planted: tuple[PlantedManeuver, ...] = field(default_factory=tuple)

    def validate(self) -> None:
        if self.n_targets < 1:
            raise SpecError(f"n_targets must be >= 1, got {self.n_targets}")
        if not 1 <= self.n_groups <= self.n_targets:
            raise SpecError(
                f"need 1 <= n_groups <= n_targets, got {self.n_groups} groups"
                f" for {self.n_targets} targets"
            )
        if self.background_backlinkers < 0:
            raise SpecError("background_backlinkers must be >= 0")
        if not 0.0 <= self.background_link_rate <= 1.0:
            raise SpecError(
                f"background_link_rate must be in [0, 1], got {self.background_link_rate}"
            )
        labels = self.group_labels()
        for maneuver in self.planted:
            maneuver.validate()
            if maneuver.group not in labels:
                raise SpecError(
                    f"{maneuver.kind} targets unknown group {maneuver.group!r};"
                    f" groups are {', '.join(labels)}"
                )

    def group_labels(self) -> tuple[str, ...]:
        return tuple(f"G{i}" for i in range(self.n_groups))

    @classmethod
    def from_dict(cls, raw: dict) -> "ScenarioSpec":
        try:
            planted = tuple(
                PlantedManeuver(
                    kind=item["kind"],
                    group=item["group"],
                    volume=item.get("volume"),
                    amplifiers=item.get("amplifiers", 12),
                    sources=item.get("sources", 12),
                    rating_range=tuple(item.get("rating_range", (0, 20))),
                    fraction=item.get("fraction", 0.5),
                )
                for item in raw.get("planted", ())
            )
            return cls(
                seed=int(raw.get("seed", 0)),
                n_targets=int(raw.get("n_targets", 12)),
                n_groups=int(raw.get("n_groups", 3)),
                background_backlinkers=int(raw.get("background_backlinkers", 30)),
                background_link_rate=float(raw.get("background_link_rate", 0.2)),
                planted=planted,
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise SpecError(f"malformed scenario spec: {exc}") from exc


@dataclass(frozen=True)
class GeneratedScenario:
    spec: ScenarioSpec
    t1: WebGraphSnapshot
    t2: WebGraphSnapshot
    grouping: TargetGrouping
    profiles: dict[DomainId, DomainProfile]

    def planted_summary(self) -> list[str]:
        if not self.spec.planted:
            return ["no planted maneuvers (pure background)"]
        return [m.describe() for m in self.spec.planted]


def _partition_targets(targets: list[DomainId], n_groups: int) -> dict[str, list[DomainId]]:
    """Contiguous blocks, sizes as equal as possible (first blocks larger)."""
    base, extra = divmod(len(targets), n_groups)
    groups: dict[str, list[DomainId]] = {}
    start = 0
    for i in range(n_groups):
        size = base + (1 if i < extra else 0)
        groups[f"G{i}"] = targets[start : start + size]
        start += size
    return groups


def generate(spec: ScenarioSpec) -> GeneratedScenario:
    """Build (t1, t2, grouping, profiles) for a scenario.

    Draw order is fixed (target ratings, background, then each planted
    maneuver in listed order), so a given spec always produces
    bit-identical snapshots.
    """
    spec.validate()
    rng = random.Random(spec.seed)
    targets = [f"site{i:02d}.example" for i in range(spec.n_targets)]
    groups = _partition_targets(targets, spec.n_groups)
    grouping = TargetGrouping(groups)

    ratings: dict[DomainId, int] = {}
    lo_bg, hi_bg = BACKGROUND_RATING_RANGE
    for target in targets:
        ratings[target] = rng.randint(lo_bg, hi_bg)

    edges: dict[tuple[DomainId, DomainId], int] = {}

    def add(src: DomainId, tgt: DomainId, count: int) -> None:
        if count > 0 and src != tgt:
            edges[(src, tgt)] = edges.get((src, tgt), 0) + count

    lo_vol, hi_vol = BACKGROUND_VOLUME_RANGE
    for i in range(spec.background_backlinkers):
        feeder = f"feed{i:02d}.example"
        ratings[feeder] = rng.randint(lo_bg, hi_bg)
        for target in targets:
            if rng.random() < spec.background_link_rate:
                add(feeder, target, rng.randint(lo_vol, hi_vol))

    decays: list[PlantedManeuver] = []
    for idx, maneuver in enumerate(spec.planted):
        members = sorted(groups[maneuver.group])
        volume = maneuver.resolved_volume()
        if maneuver.kind == "link_farm":
            for a in members:
                for b in members:
                    if a != b:
                        add(a, b, volume)
        elif maneuver.kind in ("link_scheme", "co_amplification"):
            for j in range(maneuver.amplifiers):
                amp = f"amp{idx}-{maneuver.group.lower()}-{j:02d}.example"
                ratings[amp] = rng.randint(lo_bg, hi_bg)
                fanout = rng.randint(2, len(members)) if len(members) > 1 else 1
                for member in sorted(rng.sample(members, fanout)):
                    add(amp, member, volume)
        elif maneuver.kind == "toxic_backlinks":
            lo, hi = maneuver.rating_range
            for j in range(maneuver.sources):
                toxic = f"toxic{idx}-{maneuver.group.lower()}-{j:02d}.example"
                ratings[toxic] = rng.randint(lo, hi)
                for member in members:
                    add(toxic, member, volume)
        else:  # decay: applied to t2 after t1 is final
            decays.append(maneuver)

    t2_edges = dict(edges)
    for maneuver in decays:
        member_set = groups[maneuver.group]
        for (src, tgt), count in sorted(edges.items()):
            if tgt in member_set:
                removed = int(count * maneuver.fraction)  # floor per edge
                remaining = count - removed
                if remaining > 0:
                    t2_edges[(src, tgt)] = remaining
                else:
                    t2_edges.pop((src, tgt), None)

    profiles = {
        domain: DomainProfile(domain=domain, domain_rating=rating)
        for domain, rating in ratings.items()
    }
    return GeneratedScenario(
        spec=spec,
        t1=WebGraphSnapshot("t1", edges, normalize=False),
        t2=WebGraphSnapshot("t2", t2_edges, normalize=False),
        grouping=grouping,
        profiles=profiles,
    )


def default_scenario() -> ScenarioSpec:
    """The stock demonstration scenario: one maneuver of each kind."""
    return ScenarioSpec(
        seed=7,
        n_targets=12,
        n_groups=3,
        background_backlinkers=30,
        background_link_rate=0.2,
        planted=(
            PlantedManeuver(kind="link_farm", group="G0"),
            PlantedManeuver(kind="link_scheme", group="G1"),
            PlantedManeuver(kind="toxic_backlinks", group="G2"),
            PlantedManeuver(kind="decay", group="G1"),
        ),
    )


def load_scenario_spec(path) -> ScenarioSpec:
    try:
        with open(path, encoding="utf-8") as handle:
            raw = json.load(handle)
    except OSError as exc:
        raise FileError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}", path=path)
    if not isinstance(raw, dict):
        raise SpecError("scenario spec must be a JSON object")
    spec = ScenarioSpec.from_dict(raw)
    spec.validate()
    return spec


def write_scenario(scenario: GeneratedScenario, out_dir) -> list[Path]:
    """Write the full ingest-format dataset; returns the written paths."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    paths = {
        "t1": out / "edges_t1.csv",
        "t2": out / "edges_t2.csv",
        "profiles": out / "profiles.csv",
        "groups": out / "grouping.csv",
        "manifest": out / "manifest.json",
    }
    write_edges(scenario.t1, paths["t1"])
    write_edges(scenario.t2, paths["t2"])
    write_profiles(scenario.profiles, paths["profiles"])
    write_grouping(scenario.grouping, paths["groups"])
    write_manifest(
        paths["manifest"],
        snapshot_files=[("t1", "edges_t1.csv"), ("t2", "edges_t2.csv")],
        profiles_file="profiles.csv",
        groups_file="grouping.csv",
    )
    return list(paths.values())
