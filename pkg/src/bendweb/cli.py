"""Command-line pipeline: ingest, group, compute, report, diff, simulate.

Exit codes are a stable contract: 0 success, 1 user/input error, 2
internal invariant violation. Warnings and degenerate-case flags are
written as a JSON sidecar (diagnostics.json) next to the reports, never
mixed into them.
"""

from __future__ import annotations

import argparse
import json
import sys
import traceback
from datetime import datetime, timezone
from pathlib import Path
from typing import Optional

from . import analysis, export, ingest, maneuvers, synth
from .community import LouvainConfig, filter_connected_targets, louvain
from .diagnostics import Diagnostics
from .errors import BendwebError, InvariantError, MissingSnapshot
from .graph import TargetGrouping, WebGraphSnapshot

EXIT_OK = 0
EXIT_USER_ERROR = 1
EXIT_INTERNAL_ERROR = 2


def _now() -> str:
    return datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")


def _add_grouping_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--grouping-mode",
        choices=("file", "louvain"),
        default="file",
        help="take groups from the manifest's groups file or detect them",
    )
    parser.add_argument(
        "--targets",
        help="target-list CSV (louvain mode: the candidate target set)",
    )
    parser.add_argument(
        "--connected-only",
        action="store_true",
        help="louvain mode: drop targets with no link to/from another target",
    )
    parser.add_argument("--louvain-resolution", type=float, default=1.0)
    parser.add_argument("--louvain-seed", type=int, default=0)
    parser.add_argument(
        "--louvain-binary",
        action="store_true",
        help="use binary adjacency instead of link volumes",
    )


def _add_compute_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--manifest", required=True, help="dataset manifest JSON")
    parser.add_argument("--out", required=True, help="output directory")
    parser.add_argument("--t1", help="earlier snapshot label (enables temporal metrics)")
    parser.add_argument("--t2", help="snapshot label for static metrics (default: last)")
    parser.add_argument(
        "--top-n",
        type=int,
        help="keep only each target's top N backlink sources by volume",
    )
    parser.add_argument(
        "--formats",
        default="csv,json",
        help="extra outputs: comma list of csv,json,dot,graphml"
        " (CSV reports are always written; default csv,json)",
    )
    parser.add_argument(
        "--no-timestamp",
        action="store_true",
        help="omit the generated_at header line for byte-reproducible outputs",
    )
    _add_grouping_args(parser)


class _Pipeline:
    """Shared ingest + grouping + metric stage behind compute and diff."""

    def __init__(self, args: argparse.Namespace, diagnostics: Diagnostics) -> None:
        self.args = args
        self.diagnostics = diagnostics
        manifest = ingest.load_manifest(args.manifest)
        snapshots = ingest.load_snapshots(manifest, diagnostics=diagnostics)
        labels = manifest.labels()

        t2_label = args.t2 if args.t2 else labels[-1]
        if t2_label not in snapshots:
            raise MissingSnapshot(f"snapshot {t2_label!r} not in manifest {labels}")
        t1_label: Optional[str] = args.t1
        if t1_label is not None:
            if t1_label not in snapshots:
                raise MissingSnapshot(f"snapshot {t1_label!r} not in manifest {labels}")
            if t1_label == t2_label:
                raise MissingSnapshot("temporal metrics need two distinct labels")
        self.t2: WebGraphSnapshot = snapshots[t2_label]
        self.t1: Optional[WebGraphSnapshot] = (
            snapshots[t1_label] if t1_label is not None else None
        )

        self.profiles = (
            ingest.load_profiles(manifest.profiles_path, diagnostics=diagnostics)
            if manifest.profiles_path
            else {}
        )
        universe = set(self.t2.domains())
        if self.t1 is not None:
            universe |= self.t1.domains()

        self.grouping_from_louvain = False
        if args.grouping_mode == "file":
            if not manifest.groups_path:
                raise BendwebError(
                    "grouping-mode file needs a groups entry in the manifest"
                )
            self.grouping = ingest.load_grouping(
                manifest.groups_path, universe=universe, diagnostics=diagnostics
            )
        else:
            if not args.targets:
                raise BendwebError("grouping-mode louvain needs --targets")
            targets = ingest.load_targets(args.targets)
            self._maybe_truncate(targets)
            if args.connected_only:
                targets = sorted(filter_connected_targets(self.t2, targets))
                if not targets:
                    raise BendwebError("no targets remain after --connected-only")
            config = LouvainConfig(
                resolution=args.louvain_resolution,
                seed=args.louvain_seed,
                use_weights=not args.louvain_binary,
            )
            self.grouping = louvain(self.t2, targets, config)
            self.grouping_from_louvain = True

        if args.grouping_mode == "file":
            self._maybe_truncate(self.grouping.targets)

        self.vectors = maneuvers.compute_all(
            self.t2,
            self.grouping,
            self.profiles,
            t1=self.t1,
            require_temporal=self.t1 is not None,
            diagnostics=diagnostics,
        )

    def _maybe_truncate(self, targets) -> None:
        if self.args.top_n is not None:
            if self.args.top_n < 1:
                raise BendwebError(f"--top-n must be >= 1, got {self.args.top_n}")
            self.t2 = ingest.truncate_backlinks(self.t2, targets, self.args.top_n)
            if self.t1 is not None:
                self.t1 = ingest.truncate_backlinks(self.t1, targets, self.args.top_n)


def _write_diagnostics(diagnostics: Diagnostics, out_dir: Path, timestamp) -> None:
    payload = {"diagnostics": diagnostics.as_dicts()}
    if timestamp:
        payload["generated_at"] = timestamp
    with open(out_dir / "diagnostics.json", "w", encoding="utf-8") as handle:
        json.dump(payload, handle, indent=2)
        handle.write("\n")


def cmd_compute(args: argparse.Namespace) -> int:
    diagnostics = Diagnostics()
    pipeline = _Pipeline(args, diagnostics)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    timestamp = None if args.no_timestamp else _now()
    formats = {f.strip() for f in args.formats.split(",") if f.strip()}

    analysis.write_metrics_csv(pipeline.vectors, out_dir / "metrics.csv", timestamp)
    reports = analysis.group_means(pipeline.vectors, pipeline.grouping)
    analysis.write_group_report_csv(reports, out_dir / "group_report.csv", timestamp)
    if "json" in formats:
        analysis.write_metrics_json(pipeline.vectors, out_dir / "metrics.json", timestamp)
    if pipeline.grouping_from_louvain:
        ingest.write_grouping(pipeline.grouping, out_dir / "grouping.csv")
    if "dot" in formats:
        export.export_dot(pipeline.t2, pipeline.grouping, out_dir / "graph.dot")
    if "graphml" in formats:
        export.export_graphml(pipeline.t2, pipeline.grouping, out_dir / "graph.graphml")
    _write_diagnostics(diagnostics, out_dir, timestamp)
    print(f"computed {len(pipeline.vectors)} metric vectors -> {out_dir}")
    return EXIT_OK


def cmd_diff(args: argparse.Namespace) -> int:
    diagnostics = Diagnostics()
    pipeline = _Pipeline(args, diagnostics)
    baseline = ingest.load_baseline(
        args.baseline, normalize=args.normalize_baseline, diagnostics=diagnostics
    )
    records = analysis.diff_records(pipeline.vectors, baseline)
    if not records:
        raise BendwebError("no overlap between computed targets and the baseline table")
    changes = analysis.mean_abs_change(pipeline.vectors, baseline)
    counts: dict[str, int] = {}
    for record in records:
        counts[record.target] = counts.get(record.target, 0) + 1

    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    timestamp = None if args.no_timestamp else _now()
    analysis.write_diff_csv(records, out_dir / "diff.csv", timestamp)
    analysis.write_diff_summary_csv(
        changes, counts, out_dir / "diff_summary.csv", timestamp
    )
    _write_diagnostics(diagnostics, out_dir, timestamp)
    print(f"wrote {len(records)} diff records -> {out_dir}")
    return EXIT_OK


def cmd_simulate(args: argparse.Namespace) -> int:
    if args.spec:
        spec = synth.load_scenario_spec(args.spec)
    else:
        spec = synth.default_scenario()
    scenario = synth.generate(spec)
    written = synth.write_scenario(scenario, args.out)
    print(f"scenario seed={spec.seed}: {spec.n_targets} targets in {spec.n_groups} groups")
    for line in scenario.planted_summary():
        print(f"  planted: {line}")
    print(f"wrote {len(written)} files -> {args.out}")
    return EXIT_OK


def cmd_group(args: argparse.Namespace) -> int:
    diagnostics = Diagnostics()
    manifest = ingest.load_manifest(args.manifest)
    snapshots = ingest.load_snapshots(manifest, diagnostics=diagnostics)
    label = args.t2 if args.t2 else manifest.labels()[-1]
    if label not in snapshots:
        raise MissingSnapshot(f"snapshot {label!r} not in manifest {manifest.labels()}")
    graph = snapshots[label]
    targets = ingest.load_targets(args.targets)
    if args.connected_only:
        targets = sorted(filter_connected_targets(graph, targets))
        if not targets:
            raise BendwebError("no targets remain after --connected-only")
    config = LouvainConfig(
        resolution=args.louvain_resolution,
        seed=args.louvain_seed,
        use_weights=not args.louvain_binary,
    )
    grouping = louvain(graph, targets, config)
    ingest.write_grouping(grouping, args.out)
    print(f"grouped {len(grouping.targets)} targets into {len(grouping.groups)} groups"
          f" -> {args.out}")
    return EXIT_OK


def cmd_export_graph(args: argparse.Namespace) -> int:
    diagnostics = Diagnostics()
    pipeline = _Pipeline(args, diagnostics)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    formats = {f.strip() for f in args.formats.split(",") if f.strip()}
    if "dot" in formats:
        export.export_dot(pipeline.t2, pipeline.grouping, out_dir / "graph.dot")
    if "graphml" in formats:
        export.export_graphml(pipeline.t2, pipeline.grouping, out_dir / "graph.graphml")
    print(f"exported graph ({', '.join(sorted(formats))}) -> {out_dir}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bendweb",
        description="Community maneuver metrics for directed backlink webgraphs",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_compute = sub.add_parser("compute", help="compute metric and group reports")
    _add_compute_args(p_compute)
    p_compute.set_defaults(func=cmd_compute)

    p_diff = sub.add_parser("diff", help="compare computed metrics with a baseline table")
    _add_compute_args(p_diff)
    p_diff.add_argument("--baseline", required=True, help="baseline CSV (domain,metric,value)")
    p_diff.add_argument(
        "--normalize-baseline",
        action="store_true",
        help="min-max normalize each baseline metric at ingest (raw-count baselines)",
    )
    p_diff.set_defaults(func=cmd_diff)

    p_sim = sub.add_parser("simulate", help="generate a synthetic planted-maneuver dataset")
    p_sim.add_argument("--spec", help="scenario spec JSON (default: built-in scenario)")
    p_sim.add_argument("--out", required=True, help="output directory")
    p_sim.add_argument("--no-timestamp", action="store_true",
                       help="accepted for symmetry; dataset files never carry timestamps")
    p_sim.set_defaults(func=cmd_simulate)

    p_group = sub.add_parser("group", help="detect communities and emit a grouping CSV")
    p_group.add_argument("--manifest", required=True)
    p_group.add_argument("--targets", required=True, help="target-list CSV")
    p_group.add_argument("--t2", help="snapshot label to group on (default: last)")
    p_group.add_argument("--connected-only", action="store_true")
    p_group.add_argument("--louvain-resolution", type=float, default=1.0)
    p_group.add_argument("--louvain-seed", type=int, default=0)
    p_group.add_argument("--louvain-binary", action="store_true")
    p_group.add_argument("--out", default="grouping.csv", help="output CSV path")
    p_group.set_defaults(func=cmd_group)

    p_export = sub.add_parser("export-graph", help="export the target subgraph")
    _add_compute_args(p_export)
    p_export.set_defaults(func=cmd_export_graph)
    p_export.set_defaults(formats="dot,graphml")

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors; bad flags are user errors here
        return EXIT_OK if exc.code in (0, None) else EXIT_USER_ERROR
    try:
        return args.func(args)
    except InvariantError:
        traceback.print_exc()
        return EXIT_INTERNAL_ERROR
    except BendwebError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USER_ERROR
    except Exception:  # anything unforeseen is an internal error
        traceback.print_exc()
        return EXIT_INTERNAL_ERROR


if __name__ == "__main__":
    sys.exit(main())
