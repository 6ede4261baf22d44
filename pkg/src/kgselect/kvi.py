"""Value-indicator coverage analysis and pragmatic re-introduction.

An enabler maps to the KVIs whose technical requirements intersect its
own; a cluster contributes to a KVI category when any retained member
maps to a KVI of that category. Coverage counts distinct contributing
cluster labels per category and compares them against per-category
minima. When gaps remain, removed enablers that would address them are
ranked for human review and can be re-introduced.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Any, Iterable, Mapping, Sequence

from .catalog import Catalog, Enabler, KviCategory
from .errors import EmptyGapSetError, NotRemovedError
from .graph import KnowledgeGraph, subgraph
from .pruning import REASON_PRAGMATIC, Cluster, PruneConfig, PruneOutcome, _violations

logger = logging.getLogger(__name__)


def enabler_kvis(enabler: Enabler, catalog: Catalog) -> frozenset[str]:
    """Ids of the KVIs whose requirement set intersects the enabler's."""
    if not enabler.requirement_ids:
        return frozenset()
    return frozenset(
        kvi.id for kvi in catalog.kvis if kvi.requirement_ids & enabler.requirement_ids
    )


def enabler_kvi_categories(enabler: Enabler, catalog: Catalog) -> frozenset[KviCategory]:
    return frozenset(
        catalog.kvis_by_id[kvi_id].category for kvi_id in enabler_kvis(enabler, catalog)
    )


@dataclass(frozen=True)
class CoverageReport:
    counts: Mapping[KviCategory, int]
    contributing: Mapping[KviCategory, frozenset[str]]
    gaps: frozenset[KviCategory]
    coverage_min: Mapping[KviCategory, int]

    def to_jsonable(self) -> dict[str, Any]:
        return {
            "counts": {c.value: self.counts[c] for c in KviCategory},
            "contributing": {c.value: sorted(self.contributing[c]) for c in KviCategory},
            "gaps": sorted(c.value for c in self.gaps),
            "coverage_min": {c.value: self.coverage_min.get(c, 1) for c in KviCategory},
            "satisfied": not self.gaps,
        }


def coverage(
    outcome: PruneOutcome,
    clusters: Sequence[Cluster],
    catalog: Catalog,
    cfg: PruneConfig,
) -> CoverageReport:
    """Count distinct contributing cluster labels per KVI category."""
    contributing: dict[KviCategory, set[str]] = {c: set() for c in KviCategory}
    for cluster in clusters:
        members = cluster.member_ids & outcome.retained_ids
        categories: set[KviCategory] = set()
        for enabler_id in members:
            categories |= enabler_kvi_categories(catalog.enablers_by_id[enabler_id], catalog)
        for category in categories:
            contributing[category].add(cluster.label)
    counts = {c: len(contributing[c]) for c in KviCategory}
    gaps = frozenset(
        c for c in KviCategory if counts[c] < cfg.coverage_min.get(c, 1)
    )
    return CoverageReport(
        counts=counts,
        contributing={c: frozenset(v) for c, v in contributing.items()},
        gaps=gaps,
        coverage_min=dict(cfg.coverage_min),
    )


def kv_satisfied(report: CoverageReport) -> bool:
    return not report.gaps


@dataclass(frozen=True)
class PragmaticCandidate:
    enabler_id: str
    gap_categories_addressed: frozenset[KviCategory]
    kpi_score: int
    trl: int
    rank: int

    def to_jsonable(self) -> dict[str, Any]:
        return {
            "enabler_id": self.enabler_id,
            "gap_categories_addressed": sorted(c.value for c in self.gap_categories_addressed),
            "kpi_score": self.kpi_score,
            "trl": self.trl,
            "rank": self.rank,
        }


def pragmatic_candidates(
    full: KnowledgeGraph,
    outcome: PruneOutcome,
    report: CoverageReport,
    catalog: Catalog,
) -> tuple[PragmaticCandidate, ...]:
    """Removed enablers that would address at least one coverage gap,
    ranked by gaps addressed, KPI score, TRL, then id (rank is 1-based)."""
    if not report.gaps:
        raise EmptyGapSetError("coverage has no gaps; nothing to re-introduce")
    scored: list[tuple[frozenset[KviCategory], Enabler]] = []
    for enabler_id in sorted(outcome.removed_ids):
        enabler = catalog.enablers_by_id[enabler_id]
        addressed = enabler_kvi_categories(enabler, catalog) & report.gaps
        if addressed:
            scored.append((frozenset(addressed), enabler))
    scored.sort(
        key=lambda pair: (
            -len(pair[0]),
            -sum(pair[1].kpi_impacts.values()),
            -pair[1].trl,
            pair[1].id,
        )
    )
    return tuple(
        PragmaticCandidate(
            enabler_id=enabler.id,
            gap_categories_addressed=addressed,
            kpi_score=sum(enabler.kpi_impacts.values()),
            trl=enabler.trl,
            rank=rank,
        )
        for rank, (addressed, enabler) in enumerate(scored, start=1)
    )


def reintroduce(
    outcome: PruneOutcome, full: KnowledgeGraph, ids: Iterable[str]
) -> PruneOutcome:
    """Move the given removed enablers back into the retained set.

    Edges are restored from the full graph and dependency violations
    recomputed. Re-introducing nothing returns an equal outcome.
    """
    ids = frozenset(ids)
    not_removed = sorted(ids - outcome.removed_ids)
    if not_removed:
        raise NotRemovedError(
            f"cannot re-introduce enabler(s) not currently removed: {', '.join(not_removed)}"
        )
    retained = outcome.retained_ids | ids
    reasons = dict(outcome.reasons)
    for enabler_id in ids:
        reasons[enabler_id] = REASON_PRAGMATIC
    return PruneOutcome(
        graph=subgraph(full, retained),
        retained_ids=retained,
        removed_ids=outcome.removed_ids - ids,
        dependency_violations=_violations(retained, full),
        reasons=reasons,
    )
