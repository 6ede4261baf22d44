"""Feature encodings: KPI score, node weight, and the score histogram."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import TYPE_CHECKING, Any, Mapping

from .catalog import Enabler

if TYPE_CHECKING:  # pragma: no cover
    from .graph import KnowledgeGraph

MIGRATION_CRITICAL_WEIGHT = 3
DEFAULT_NODE_WEIGHT = 1


def kpi_score(enabler: Enabler) -> int:
    """Sum of the enabler's impacts over all KPIs; absent KPIs count as 0."""
    return sum(enabler.kpi_impacts.values())


def node_weight(enabler: Enabler) -> int:
    return MIGRATION_CRITICAL_WEIGHT if enabler.migration_critical else DEFAULT_NODE_WEIGHT


@dataclass(frozen=True)
class Histogram:
    """KPI-score histogram over the enabler nodes of one graph."""

    buckets: Mapping[int, int]

    @property
    def total(self) -> int:
        return sum(self.buckets.values())

    def count(self, score: int) -> int:
        return self.buckets.get(score, 0)

    def to_jsonable(self) -> dict[str, Any]:
        return {
            "buckets": [[score, self.buckets[score]] for score in sorted(self.buckets)],
            "total": self.total,
        }


def kpi_histogram(g: "KnowledgeGraph") -> Histogram:
    from .graph import NodeKind

    counts = Counter(
        node.features.kpi_score
        for node in g.nodes.values()
        if node.kind is NodeKind.ENABLER
    )
    return Histogram(buckets=dict(counts))


def histogram_from_jsonable(obj: Mapping[str, Any]) -> Histogram:
    """Inverse of :meth:`Histogram.to_jsonable`."""
    return Histogram(buckets={int(score): int(count) for score, count in obj["buckets"]})
