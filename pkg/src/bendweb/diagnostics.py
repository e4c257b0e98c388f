"""Data-quality diagnostics collected alongside results.

Loaders and metric functions never fail on degenerate-but-legal inputs;
instead they record a warning or flag here so analysts can see exactly
which values came out of a guarded code path. Diagnostics are kept
separate from results on purpose: machine-readable outputs stay clean
and the quality signals travel in a sidecar.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Iterator

WARNING = "warning"
FLAG = "flag"

# Warning codes (data quality during ingestion)
SELF_LOOP_DROPPED = "self_loop_dropped"
UNKNOWN_GROUPING_DOMAIN = "unknown_grouping_domain"
TEMPORAL_UNAVAILABLE = "temporal_metrics_unavailable"

# Flag codes (documented degenerate-case conventions)
NEGATE_NO_RATED_BACKLINKS = "negate_no_rated_backlinks"
NEGATE_PARTIAL_COVERAGE = "negate_partial_coverage"
NARROW_NO_BACKLINKS = "narrow_no_backlinks"
NEGLECT_ZERO_T2_TOTAL = "neglect_zero_t2_total"
NORMALIZE_DEGENERATE_RANGE = "normalize_degenerate_range"
SPEARMAN_CONSTANT_INPUT = "spearman_constant_input"


@dataclass(frozen=True)
class Diagnostic:
    severity: str  # WARNING or FLAG
    code: str
    message: str
    context: dict[str, Any] = field(default_factory=dict)

    def as_dict(self) -> dict[str, Any]:
        return {
            "severity": self.severity,
            "code": self.code,
            "message": self.message,
            "context": dict(self.context),
        }


class Diagnostics:
    """Append-only collector of Diagnostic records."""

    def __init__(self) -> None:
        self.records: list[Diagnostic] = []

    def warn(self, code: str, message: str, **context: Any) -> None:
        self.records.append(Diagnostic(WARNING, code, message, context))

    def flag(self, code: str, message: str, **context: Any) -> None:
        self.records.append(Diagnostic(FLAG, code, message, context))

    def extend(self, other: "Diagnostics") -> None:
        self.records.extend(other.records)

    def has(self, code: str) -> bool:
        return any(r.code == code for r in self.records)

    def by_code(self, code: str) -> list[Diagnostic]:
        return [r for r in self.records if r.code == code]

    def as_dicts(self) -> list[dict[str, Any]]:
        return [r.as_dict() for r in self.records]

    def __iter__(self) -> Iterator[Diagnostic]:
        return iter(self.records)

    def __len__(self) -> int:
        return len(self.records)

    def __bool__(self) -> bool:
        return bool(self.records)
