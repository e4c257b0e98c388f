"""Community maneuver metrics for directed backlink webgraphs.

Quantifies how groups of websites build or erode structural authority:
eight scores per target site (back, build, bridge, boost, negate,
neutralize, narrow, neglect) computed from link-count snapshots, domain
authority profiles, and a grouping of the targets, plus Louvain
community detection, group-level aggregation, baseline diffing, and
synthetic planted-maneuver scenarios for validation.
"""

from .analysis import (
    DiffRecord,
    GroupReport,
    SpearmanResult,
    diff_records,
    group_means,
    mean_abs_change,
    min_max_normalize,
    spearman,
)
from .community import (
    LouvainConfig,
    filter_connected_targets,
    induce_target_subgraph,
    louvain,
    louvain_with_modularity,
    modularity,
)
from .diagnostics import Diagnostic, Diagnostics
from .errors import (
    BendwebError,
    DuplicateDomain,
    DuplicateTarget,
    EmptyInput,
    FileError,
    InvariantError,
    LengthMismatch,
    MissingSnapshot,
    ParseError,
    SpecError,
    TooFewPoints,
    UnknownTarget,
)
from .export import export_dot, export_graphml
from .graph import (
    BacklinkView,
    DomainId,
    DomainProfile,
    GroupId,
    TargetGrouping,
    WebGraphSnapshot,
    backlinks_of,
    normalize_domain,
    outlinks_to_targets,
)
from .ingest import (
    SnapshotManifest,
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
from .maneuvers import (
    METRIC_NAMES,
    STATIC_METRICS,
    TEMPORAL_METRICS,
    DeltaView,
    MetricVector,
    back,
    boost,
    bridge,
    build,
    compute_all,
    delta_view,
    narrow,
    negate,
    neglect,
    neutralize,
)
from .synth import (
    GeneratedScenario,
    PlantedManeuver,
    ScenarioSpec,
    default_scenario,
    generate,
    load_scenario_spec,
    write_scenario,
)

__version__ = "0.1.0"

__all__ = [
    "BacklinkView",
    "BendwebError",
    "DeltaView",
    "Diagnostic",
    "Diagnostics",
    "DiffRecord",
    "DomainId",
    "DomainProfile",
    "DuplicateDomain",
    "DuplicateTarget",
    "EmptyInput",
    "FileError",
    "GeneratedScenario",
    "GroupId",
    "GroupReport",
    "InvariantError",
    "LengthMismatch",
    "LouvainConfig",
    "METRIC_NAMES",
    "MetricVector",
    "MissingSnapshot",
    "ParseError",
    "PlantedManeuver",
    "ScenarioSpec",
    "SnapshotManifest",
    "SpearmanResult",
    "SpecError",
    "STATIC_METRICS",
    "TEMPORAL_METRICS",
    "TargetGrouping",
    "TooFewPoints",
    "UnknownTarget",
    "WebGraphSnapshot",
    "back",
    "backlinks_of",
    "boost",
    "bridge",
    "build",
    "compute_all",
    "default_scenario",
    "delta_view",
    "diff_records",
    "export_dot",
    "export_graphml",
    "filter_connected_targets",
    "generate",
    "group_means",
    "induce_target_subgraph",
    "load_baseline",
    "load_edges",
    "load_grouping",
    "load_manifest",
    "load_profiles",
    "load_scenario_spec",
    "load_snapshots",
    "load_targets",
    "louvain",
    "louvain_with_modularity",
    "mean_abs_change",
    "min_max_normalize",
    "modularity",
    "narrow",
    "negate",
    "neglect",
    "neutralize",
    "normalize_domain",
    "outlinks_to_targets",
    "spearman",
    "truncate_backlinks",
    "write_edges",
    "write_grouping",
    "write_manifest",
    "write_profiles",
    "write_scenario",
]
