"""Threshold-driven graph pruning.

The pruning pipeline narrows the knowledge graph in stages: maturity
prioritization (TRL threshold with a migration-critical override),
category clustering with an in-cluster selection policy, KPI-score
pruning with carry-over exemptions, and a dependency repair pass. Every
stage returns a :class:`PruneOutcome` that partitions its input enabler
set into retained and removed, with a reason per enabler.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Any, Mapping, Sequence

from .catalog import TRL_MAX, TRL_MIN, Catalog, KviCategory
from .errors import ConfigError, SchemaError
from .graph import EdgeKind, KnowledgeGraph, NodeKind, subgraph

logger = logging.getLogger(__name__)

# reason vocabulary; reasons partition each outcome's input enabler set
REASON_MEETS_TRL = "meets TRL threshold"
REASON_BELOW_TRL = "below TRL threshold"
REASON_MIGRATION_CRITICAL = "migration critical"
REASON_MEETS_KPI = "meets KPI threshold"
REASON_BELOW_KPI = "below KPI threshold"
REASON_CARRY_OVER = "carry-over"
REASON_CLUSTER_KEEP_ALL = "cluster policy keep-all"
REASON_BEST_IN_CLUSTER = "best in cluster"
REASON_NOT_BEST_IN_CLUSTER = "not best in cluster"
REASON_DEPENDENCY_READD = "dependency closure re-add"
REASON_DEPENDENCY_DROP = "missing dependency dropped"
REASON_PRAGMATIC = "pragmatic re-introduction"


class ClusterPolicy(str, Enum):
    KEEP_ALL = "KeepAll"
    BEST_PER_CLUSTER = "BestPerCluster"


class DependencyPolicy(str, Enum):
    FLAG = "Flag"
    READD_CLOSURE = "ReaddClosure"
    DROP_DEPENDENTS = "DropDependents"


def _default_coverage_min() -> Mapping[KviCategory, int]:
    return {category: 1 for category in KviCategory}


@dataclass(frozen=True)
class PruneConfig:
    """All knobs of the selection pipeline, with sensible defaults."""

    trl_min: int = 2
    kpi_score_min: int = 1
    keep_migration_critical: bool = True
    carry_over_ids: frozenset[str] = frozenset()
    cluster_policy: ClusterPolicy = ClusterPolicy.KEEP_ALL
    dependency_policy: DependencyPolicy = DependencyPolicy.FLAG
    coverage_min: Mapping[KviCategory, int] = field(default_factory=_default_coverage_min)
    max_pragmatic_iterations: int = 3
    threshold_schedule: tuple[tuple[int, int], ...] = ((2, 1), (2, 0))

    def __post_init__(self) -> None:
        if not TRL_MIN <= self.trl_min <= TRL_MAX:
            raise ConfigError(f"trl_min must be in [{TRL_MIN}, {TRL_MAX}], got {self.trl_min}")
        if self.max_pragmatic_iterations < 0:
            raise ConfigError("max_pragmatic_iterations must be >= 0")
        for i, entry in enumerate(self.threshold_schedule):
            if len(entry) != 2:
                raise ConfigError(f"threshold_schedule[{i}] must be a (trl_min, kpi_score_min) pair")
            if not TRL_MIN <= entry[0] <= TRL_MAX:
                raise ConfigError(
                    f"threshold_schedule[{i}] trl_min must be in [{TRL_MIN}, {TRL_MAX}], got {entry[0]}"
                )
        for category, minimum in self.coverage_min.items():
            if minimum < 0:
                raise ConfigError(f"coverage_min[{category.value}] must be >= 0, got {minimum}")

    def to_jsonable(self) -> dict[str, Any]:
        return {
            "trl_min": self.trl_min,
            "kpi_score_min": self.kpi_score_min,
            "keep_migration_critical": self.keep_migration_critical,
            "carry_over_ids": sorted(self.carry_over_ids),
            "cluster_policy": self.cluster_policy.value,
            "dependency_policy": self.dependency_policy.value,
            "coverage_min": {c.value: self.coverage_min.get(c, 1) for c in KviCategory},
            "max_pragmatic_iterations": self.max_pragmatic_iterations,
            "threshold_schedule": [list(entry) for entry in self.threshold_schedule],
        }

    @staticmethod
    def from_jsonable(obj: Mapping[str, Any]) -> "PruneConfig":
        base = PruneConfig()
        return base.with_overrides(obj)

    def with_overrides(self, overrides: Mapping[str, Any]) -> "PruneConfig":
        """Apply a JSON-shaped partial config on top of this one."""
        known = {
            "trl_min",
            "kpi_score_min",
            "keep_migration_critical",
            "carry_over_ids",
            "cluster_policy",
            "dependency_policy",
            "coverage_min",
            "max_pragmatic_iterations",
            "threshold_schedule",
        }
        unknown = sorted(set(overrides) - known)
        if unknown:
            raise ConfigError(f"unknown config field(s): {', '.join(unknown)}")
        kwargs: dict[str, Any] = {}
        try:
            if "trl_min" in overrides:
                kwargs["trl_min"] = int(overrides["trl_min"])
            if "kpi_score_min" in overrides:
                kwargs["kpi_score_min"] = int(overrides["kpi_score_min"])
            if "keep_migration_critical" in overrides:
                kwargs["keep_migration_critical"] = bool(overrides["keep_migration_critical"])
            if "carry_over_ids" in overrides:
                kwargs["carry_over_ids"] = frozenset(str(i) for i in overrides["carry_over_ids"])
            if "cluster_policy" in overrides:
                kwargs["cluster_policy"] = ClusterPolicy(overrides["cluster_policy"])
            if "dependency_policy" in overrides:
                kwargs["dependency_policy"] = DependencyPolicy(overrides["dependency_policy"])
            if "coverage_min" in overrides:
                merged = dict(self.coverage_min)
                for key, value in overrides["coverage_min"].items():
                    merged[KviCategory(key)] = int(value)
                kwargs["coverage_min"] = merged
            if "max_pragmatic_iterations" in overrides:
                kwargs["max_pragmatic_iterations"] = int(overrides["max_pragmatic_iterations"])
            if "threshold_schedule" in overrides:
                kwargs["threshold_schedule"] = tuple(
                    (int(a), int(b)) for a, b in overrides["threshold_schedule"]
                )
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"malformed config value: {exc}") from exc
        return replace(self, **kwargs)


@dataclass(frozen=True)
class Cluster:
    label: str
    member_ids: frozenset[str]

    def to_jsonable(self) -> dict[str, Any]:
        return {"label": self.label, "member_ids": sorted(self.member_ids)}


@dataclass(frozen=True)
class PruneOutcome:
    graph: KnowledgeGraph
    retained_ids: frozenset[str]
    removed_ids: frozenset[str]
    dependency_violations: tuple[tuple[str, str], ...]
    reasons: Mapping[str, str]

    def to_jsonable(self) -> dict[str, Any]:
        from .graph import graph_to_jsonable

        return {
            "graph": graph_to_jsonable(self.graph),
            "retained": sorted(self.retained_ids),
            "removed": sorted(self.removed_ids),
            "dependency_violations": [list(v) for v in self.dependency_violations],
            "reasons": {i: self.reasons[i] for i in sorted(self.reasons)},
        }


def _violations(
    retained: frozenset[str], reference: KnowledgeGraph
) -> tuple[tuple[str, str], ...]:
    """Dependency edges of ``reference`` with a retained endpoint whose
    partner is not retained, as sorted (retained, missing) pairs."""
    found: set[tuple[str, str]] = set()
    for edge in reference.edges:
        if edge.kind is not EdgeKind.DEPENDENCY:
            continue
        if edge.a in retained and edge.b not in retained:
            found.add((edge.a, edge.b))
        elif edge.b in retained and edge.a not in retained:
            found.add((edge.b, edge.a))
    return tuple(sorted(found))


def _outcome(
    g: KnowledgeGraph,
    retained: frozenset[str],
    reasons: Mapping[str, str],
    reference: KnowledgeGraph | None = None,
) -> PruneOutcome:
    pruned = subgraph(g, retained)
    return PruneOutcome(
        graph=pruned,
        retained_ids=retained,
        removed_ids=g.enabler_ids - retained,
        dependency_violations=_violations(retained, reference or g),
        reasons=dict(reasons),
    )


def prioritize(g: KnowledgeGraph, cfg: PruneConfig) -> PruneOutcome:
    """Maturity pruning: keep enablers with trl >= trl_min, plus
    migration-critical ones when the config says so."""
    reasons: dict[str, str] = {}
    retained: set[str] = set()
    for enabler_id in g.enabler_ids:
        node = g.nodes[enabler_id]
        trl = node.features.trl or 0
        if trl >= cfg.trl_min:
            retained.add(enabler_id)
            reasons[enabler_id] = REASON_MEETS_TRL
        elif cfg.keep_migration_critical and node.migration_critical:
            retained.add(enabler_id)
            reasons[enabler_id] = REASON_MIGRATION_CRITICAL
        else:
            reasons[enabler_id] = REASON_BELOW_TRL
    return _outcome(g, frozenset(retained), reasons)


def cluster_enablers(g: KnowledgeGraph, catalog: Catalog) -> list[Cluster]:
    """Partition the graph's enablers by catalog category, sorted by label."""
    groups: dict[str, set[str]] = {}
    for enabler_id in g.enabler_ids:
        category = catalog.enablers_by_id[enabler_id].category
        groups.setdefault(category, set()).add(enabler_id)
    return [Cluster(label, frozenset(members)) for label, members in sorted(groups.items())]


def select_in_clusters(
    clusters: Sequence[Cluster], g: KnowledgeGraph, policy: ClusterPolicy
) -> PruneOutcome:
    """Apply the in-cluster selection policy.

    ``KeepAll`` is the identity. ``BestPerCluster`` keeps the member with
    the highest (kpi_score, trl) and the lexicographically smallest id on
    ties.
    """
    if policy is ClusterPolicy.KEEP_ALL:
        reasons = {i: REASON_CLUSTER_KEEP_ALL for i in g.enabler_ids}
        return _outcome(g, g.enabler_ids, reasons)

    retained: set[str] = set()
    reasons = {i: REASON_NOT_BEST_IN_CLUSTER for i in g.enabler_ids}
    for cluster in clusters:
        members = sorted(cluster.member_ids & g.enabler_ids)
        if not members:
            continue
        best = min(
            members,
            key=lambda i: (
                -g.nodes[i].features.kpi_score,
                -(g.nodes[i].features.trl or 0),
                i,
            ),
        )
        retained.add(best)
        reasons[best] = REASON_BEST_IN_CLUSTER
    return _outcome(g, frozenset(retained), reasons)


def prune_by_kpi(g: KnowledgeGraph, cfg: PruneConfig) -> PruneOutcome:
    """KPI-score pruning: keep enablers scoring at least ``kpi_score_min``,
    plus explicit carry-overs."""
    reasons: dict[str, str] = {}
    retained: set[str] = set()
    for enabler_id in g.enabler_ids:
        score = g.nodes[enabler_id].features.kpi_score
        if score >= cfg.kpi_score_min:
            retained.add(enabler_id)
            reasons[enabler_id] = REASON_MEETS_KPI
        elif enabler_id in cfg.carry_over_ids:
            retained.add(enabler_id)
            reasons[enabler_id] = REASON_CARRY_OVER
        else:
            reasons[enabler_id] = REASON_BELOW_KPI
    return _outcome(g, frozenset(retained), reasons)


def repair_dependencies(
    outcome: PruneOutcome, full: KnowledgeGraph, policy: DependencyPolicy
) -> PruneOutcome:
    """Resolve dependency edges that now dangle out of the retained set.

    ``Flag`` recomputes violations against the full graph and leaves the
    selection alone. ``ReaddClosure`` transitively re-adds every pruned
    enabler reachable from a retained one over dependency edges of the
    full graph. ``DropDependents`` iteratively removes retained enablers
    that still have missing dependency partners. Dependency edges are
    undirected, so partner means either endpoint.
    """
    reasons = dict(outcome.reasons)
    retained = set(outcome.retained_ids)

    if policy is DependencyPolicy.FLAG:
        return PruneOutcome(
            graph=outcome.graph,
            retained_ids=outcome.retained_ids,
            removed_ids=outcome.removed_ids,
            dependency_violations=_violations(outcome.retained_ids, full),
            reasons=reasons,
        )

    if policy is DependencyPolicy.READD_CLOSURE:
        while True:
            missing = {pair[1] for pair in _violations(frozenset(retained), full)}
            if not missing:
                break
            for enabler_id in missing:
                retained.add(enabler_id)
                reasons[enabler_id] = REASON_DEPENDENCY_READD
    else:  # DROP_DEPENDENTS
        while True:
            dangling = {pair[0] for pair in _violations(frozenset(retained), full)}
            if not dangling:
                break
            for enabler_id in dangling:
                retained.discard(enabler_id)
                reasons[enabler_id] = REASON_DEPENDENCY_DROP

    universe = outcome.retained_ids | outcome.removed_ids
    final = frozenset(retained)
    # reasons must keep covering exactly the input universe plus re-adds
    for enabler_id in universe | final:
        reasons.setdefault(enabler_id, REASON_BELOW_KPI)
    return PruneOutcome(
        graph=subgraph(full, final),
        retained_ids=final,
        removed_ids=(universe | final) - final,
        dependency_violations=_violations(final, full),
        reasons={i: reasons[i] for i in universe | final},
    )


def outcome_from_jsonable(obj: Mapping[str, Any]) -> PruneOutcome:
    """Inverse of :meth:`PruneOutcome.to_jsonable`."""
    from .graph import graph_from_jsonable

    required = {"graph", "retained", "removed", "dependency_violations", "reasons"}
    if not isinstance(obj, Mapping) or set(obj) != required:
        raise SchemaError("malformed pruning outcome document")
    return PruneOutcome(
        graph=graph_from_jsonable(obj["graph"]),
        retained_ids=frozenset(obj["retained"]),
        removed_ids=frozenset(obj["removed"]),
        dependency_violations=tuple((a, b) for a, b in obj["dependency_violations"]),
        reasons=dict(obj["reasons"]),
    )


def clusters_from_jsonable(obj: Sequence[Mapping[str, Any]]) -> tuple[Cluster, ...]:
    """Inverse of a list of :meth:`Cluster.to_jsonable` documents."""
    clusters = []
    for doc in obj:
        if not isinstance(doc, Mapping) or set(doc) != {"label", "members"}:
            raise SchemaError("malformed cluster document")
        clusters.append(Cluster(label=doc["label"], member_ids=frozenset(doc["members"])))
    return tuple(clusters)


def selection_rows(outcome: PruneOutcome, catalog: Catalog) -> list[dict[str, Any]]:
    """Tabular view of an outcome: one row per enabler in the decision
    universe, sorted by id, ready for CSV export or API responses."""
    rows = []
    for enabler_id in sorted(outcome.retained_ids | outcome.removed_ids):
        enabler = catalog.enablers_by_id.get(enabler_id)
        if enabler is None:
            raise SchemaError(f"outcome references enabler '{enabler_id}' not in the catalog")
        rows.append(
            {
                "id": enabler.id,
                "name": enabler.name,
                "category": enabler.category,
                "trl": enabler.trl,
                "kpi_score": sum(enabler.kpi_impacts.values()),
                "retained": enabler_id in outcome.retained_ids,
                "reason": outcome.reasons.get(enabler_id, ""),
            }
        )
    return rows
