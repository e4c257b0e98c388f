"""Aggregation and comparison of metric vectors.

Covers the reporting side of the pipeline: per-group means, min-max
normalization, new-versus-baseline difference records, rank
correlation, and the CSV/JSON report writers.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass
from typing import Mapping, Optional, Sequence

import numpy as np
from scipy import stats

from .diagnostics import (
    NORMALIZE_DEGENERATE_RANGE,
    SPEARMAN_CONSTANT_INPUT,
    Diagnostics,
)
from .errors import EmptyInput, LengthMismatch, TooFewPoints, UnknownTarget
from .graph import DomainId, GroupId, TargetGrouping
from .maneuvers import METRIC_NAMES, MetricVector

BaselineTable = Mapping[tuple[DomainId, str], float]


@dataclass(frozen=True)
class GroupReport:
    """Per-group mean and population stddev of each metric.

    Metrics that were unavailable for some members (temporal scores
    without an earlier snapshot) are averaged over the members that do
    have them; ``per_metric_count`` carries the effective counts and a
    count of zero leaves mean and stddev as None.
    """

    group: GroupId
    member_count: int
    per_metric_mean: dict[str, Optional[float]]
    per_metric_stddev: dict[str, Optional[float]]
    per_metric_count: dict[str, int]


@dataclass(frozen=True)
class DiffRecord:
    target: DomainId
    metric: str
    new_value: float
    baseline_value: float

    @property
    def difference(self) -> float:
        return self.new_value - self.baseline_value


@dataclass(frozen=True)
class SpearmanResult:
    rho: float
    p_value: float
    undefined: bool = False  # constant input: rho has no meaning
    method: str = "t-approximation"


def min_max_normalize(
    values: Mapping[DomainId, float],
    diagnostics: Optional[Diagnostics] = None,
) -> dict[DomainId, float]:
    """Rescale values to [0, 1] via (v - min) / (max - min).

    A degenerate range (all values equal) maps everything to 0 and
    records a flag.
    """
    if not values:
        raise EmptyInput("min_max_normalize needs at least one value")
    lo = min(values.values())
    hi = max(values.values())
    if hi == lo:
        if diagnostics is not None:
            diagnostics.flag(
                NORMALIZE_DEGENERATE_RANGE,
                f"all {len(values)} values equal {lo}; normalized to 0",
                value=lo,
            )
        return {key: 0.0 for key in values}
    span = hi - lo
    return {key: (v - lo) / span for key, v in values.items()}


def group_means(
    vectors: Sequence[MetricVector],
    grouping: TargetGrouping,
) -> list[GroupReport]:
    """Unweighted mean and population stddev per metric per group."""
    by_group: dict[GroupId, list[MetricVector]] = {}
    for vector in vectors:
        if vector.target not in grouping:
            raise UnknownTarget(f"{vector.target} is not in the grouping")
        by_group.setdefault(grouping.group_of(vector.target), []).append(vector)
    reports = []
    for group in sorted(by_group):
        members = by_group[group]
        means: dict[str, Optional[float]] = {}
        stddevs: dict[str, Optional[float]] = {}
        counts: dict[str, int] = {}
        for metric in METRIC_NAMES:
            present = [v.value(metric) for v in members if v.value(metric) is not None]
            counts[metric] = len(present)
            if present:
                arr = np.asarray(present, dtype=float)
                means[metric] = float(arr.mean())
                stddevs[metric] = float(arr.std())  # population, ddof=0
            else:
                means[metric] = None
                stddevs[metric] = None
        reports.append(
            GroupReport(
                group=group,
                member_count=len(members),
                per_metric_mean=means,
                per_metric_stddev=stddevs,
                per_metric_count=counts,
            )
        )
    return reports


def diff_records(
    vectors: Sequence[MetricVector],
    baseline: BaselineTable,
) -> list[DiffRecord]:
    """New-minus-baseline records for every cell present on both sides."""
    records = []
    for vector in sorted(vectors, key=lambda v: v.target):
        for metric in METRIC_NAMES:
            new_value = vector.value(metric)
            if new_value is None:
                continue
            key = (vector.target, metric)
            if key in baseline:
                records.append(
                    DiffRecord(
                        target=vector.target,
                        metric=metric,
                        new_value=new_value,
                        baseline_value=baseline[key],
                    )
                )
    return records


def mean_abs_change(
    vectors: Sequence[MetricVector],
    baseline: BaselineTable,
) -> dict[DomainId, float]:
    """Per-target mean |new - baseline| over the metrics present in both.

    Baseline values are expected on the same [0, 1] scale as the new
    scores (see the baseline loader's normalize option). Targets with
    no overlapping cells are omitted.
    """
    sums: dict[DomainId, float] = {}
    counts: dict[DomainId, int] = {}
    for record in diff_records(vectors, baseline):
        sums[record.target] = sums.get(record.target, 0.0) + abs(record.difference)
        counts[record.target] = counts.get(record.target, 0) + 1
    return {target: sums[target] / counts[target] for target in sums}


def _average_ranks(values: Sequence[float]) -> np.ndarray:
    """1-based ranks; tied values share the mean of their rank span."""
    arr = np.asarray(values, dtype=float)
    order = np.argsort(arr, kind="stable")
    ranks = np.empty(len(arr), dtype=float)
    i = 0
    while i < len(arr):
        j = i
        while j + 1 < len(arr) and arr[order[j + 1]] == arr[order[i]]:
            j += 1
        ranks[order[i : j + 1]] = (i + j) / 2.0 + 1.0
        i = j + 1
    return ranks


def spearman(
    x: Sequence[float],
    y: Sequence[float],
    *,
    exact: bool = False,
    diagnostics: Optional[Diagnostics] = None,
) -> SpearmanResult:
    """Spearman rank correlation with tie-aware average ranks.

    The p-value uses the t-distribution approximation with n - 2
    degrees of freedom; ``exact=True`` switches to full permutation
    enumeration (only sensible for small n, guarded at n <= 10).
    Constant input has no defined rank correlation: the result is
    flagged undefined with NaN values.
    """
    if len(x) != len(y):
        raise LengthMismatch(f"|x| = {len(x)} but |y| = {len(y)}")
    n = len(x)
    if n < 3:
        raise TooFewPoints(f"need at least 3 points, got {n}")
    rx = _average_ranks(x)
    ry = _average_ranks(y)
    if np.all(rx == rx[0]) or np.all(ry == ry[0]):
        if diagnostics is not None:
            diagnostics.flag(
                SPEARMAN_CONSTANT_INPUT,
                "constant input, rank correlation undefined",
            )
        return SpearmanResult(rho=math.nan, p_value=math.nan, undefined=True)
    rho = float(np.corrcoef(rx, ry)[0, 1])
    rho = max(-1.0, min(1.0, rho))
    if exact:
        if n > 10:
            raise TooFewPoints(f"exact permutation test limited to n <= 10, got {n}")
        p = _exact_permutation_p(rx, ry, abs(rho))
        return SpearmanResult(rho=rho, p_value=p, method="exact-permutation")
    if abs(rho) == 1.0:
        return SpearmanResult(rho=rho, p_value=0.0)
    t = rho * math.sqrt((n - 2) / (1.0 - rho * rho))
    p = 2.0 * float(stats.t.sf(abs(t), df=n - 2))
    return SpearmanResult(rho=rho, p_value=min(1.0, p))


def _exact_permutation_p(rx: np.ndarray, ry: np.ndarray, observed: float) -> float:
    from itertools import permutations

    n = len(rx)
    hits = 0
    total = 0
    for perm in permutations(range(n)):
        rho = float(np.corrcoef(rx, ry[list(perm)])[0, 1])
        total += 1
        if abs(rho) >= observed - 1e-12:
            hits += 1
    return hits / total


# ---------------------------------------------------------------------------
# Report writers
# ---------------------------------------------------------------------------


def _fmt(value: Optional[float]) -> str:
    if value is None:
        return ""
    return repr(float(value))


def _timestamp_line(handle, timestamp: Optional[str]) -> None:
    if timestamp:
        handle.write(f"# generated_at {timestamp}\n")


def write_metrics_csv(
    vectors: Sequence[MetricVector], path, timestamp: Optional[str] = None
) -> None:
    """Per-site report: one row per target, metrics in canonical order."""
    with open(path, "w", encoding="utf-8", newline="") as handle:
        _timestamp_line(handle, timestamp)
        writer = csv.writer(handle)
        writer.writerow(["domain", *METRIC_NAMES])
        for vector in sorted(vectors, key=lambda v: v.target):
            writer.writerow(
                [vector.target, *(_fmt(vector.value(m)) for m in METRIC_NAMES)]
            )


def write_metrics_json(
    vectors: Sequence[MetricVector], path, timestamp: Optional[str] = None
) -> None:
    ordered = sorted(vectors, key=lambda v: v.target)
    payload: dict = {
        "provenance": list(ordered[0].provenance) if ordered else [],
        "metrics": [
            {"domain": v.target, **{m: v.value(m) for m in METRIC_NAMES}}
            for v in ordered
        ],
    }
    if timestamp:
        payload["generated_at"] = timestamp
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(payload, handle, indent=2)
        handle.write("\n")


def write_group_report_csv(
    reports: Sequence[GroupReport], path, timestamp: Optional[str] = None
) -> None:
    with open(path, "w", encoding="utf-8", newline="") as handle:
        _timestamp_line(handle, timestamp)
        writer = csv.writer(handle)
        writer.writerow(["group", "metric", "mean", "stddev", "n"])
        for report in sorted(reports, key=lambda r: r.group):
            for metric in METRIC_NAMES:
                writer.writerow(
                    [
                        report.group,
                        metric,
                        _fmt(report.per_metric_mean[metric]),
                        _fmt(report.per_metric_stddev[metric]),
                        report.per_metric_count[metric],
                    ]
                )


def write_diff_csv(
    records: Sequence[DiffRecord], path, timestamp: Optional[str] = None
) -> None:
    metric_order = {m: i for i, m in enumerate(METRIC_NAMES)}
    with open(path, "w", encoding="utf-8", newline="") as handle:
        _timestamp_line(handle, timestamp)
        writer = csv.writer(handle)
        writer.writerow(["domain", "metric", "new", "baseline", "diff"])
        for record in sorted(records, key=lambda r: (r.target, metric_order[r.metric])):
            writer.writerow(
                [
                    record.target,
                    record.metric,
                    _fmt(record.new_value),
                    _fmt(record.baseline_value),
                    _fmt(record.difference),
                ]
            )


def write_diff_summary_csv(
    changes: Mapping[DomainId, float],
    counts: Mapping[DomainId, int],
    path,
    timestamp: Optional[str] = None,
) -> None:
    """Per-target mean absolute change, largest movers first."""
    with open(path, "w", encoding="utf-8", newline="") as handle:
        _timestamp_line(handle, timestamp)
        writer = csv.writer(handle)
        writer.writerow(["domain", "mean_abs_change", "n_metrics"])
        for domain in sorted(changes, key=lambda d: (-changes[d], d)):
            writer.writerow([domain, _fmt(changes[domain]), counts.get(domain, 0)])
