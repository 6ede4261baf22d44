"""Knowledge-graph based enabler selection for 6G use-case design.

The package turns a catalog of technological enablers, design principles,
KPIs and KVIs into an undirected knowledge graph, then narrows it to an
end-to-end system design through staged, threshold-driven pruning with
KVI-coverage feedback and human-guided re-introduction of discarded
enablers.
"""

from .catalog import (
    Catalog,
    DesignPrinciple,
    Enabler,
    KeyValue,
    KpiRequirement,
    Kvi,
    KviCategory,
    Pillar,
    TechnicalRequirement,
    Violation,
    catalog_digest,
    catalog_to_jsonable,
    dumps_catalog,
    load_catalog,
    load_catalog_path,
    parse_catalog,
    validate_catalog,
)
from .errors import (
    ConfigError,
    EmptyGapSetError,
    EmptyScheduleError,
    IllegalTransitionError,
    IncompatibleFormatError,
    InputSyntaxError,
    IntegrityError,
    InvalidCatalogError,
    KgSelectError,
    NotFoundError,
    NotRemovedError,
    ReplayMismatchError,
    SchemaError,
    SessionClosedError,
    UnknownNodeError,
)
from .graph import (
    Edge,
    EdgeKind,
    KnowledgeGraph,
    Node,
    NodeKind,
    build_full_kg,
    diff_catalog,
    graph_from_jsonable,
    graph_to_jsonable,
    subgraph,
)
from .kvi import (
    CoverageReport,
    PragmaticCandidate,
    coverage,
    enabler_kvis,
    kv_satisfied,
    pragmatic_candidates,
    reintroduce,
)
from .persist import SessionStore, SnapshotStore
from .pipeline import (
    Decision,
    DecisionKind,
    Session,
    SessionStatus,
    StageKind,
    StageRecord,
    advance,
    evaluate_once,
    new_session,
    replay_events,
    run_batch,
)
from .pruning import (
    ClusterPolicy,
    DependencyPolicy,
    PruneConfig,
    PruneOutcome,
    cluster_enablers,
    prioritize,
    prune_by_kpi,
    repair_dependencies,
    select_in_clusters,
)
from .reports import ExportFormat, export, import_graph
from .scoring import Histogram, kpi_histogram, kpi_score, node_weight

__version__ = "0.1.0"

__all__ = [
    "Catalog",
    "ClusterPolicy",
    "ConfigError",
    "CoverageReport",
    "Decision",
    "DecisionKind",
    "DependencyPolicy",
    "DesignPrinciple",
    "Edge",
    "EdgeKind",
    "EmptyGapSetError",
    "EmptyScheduleError",
    "Enabler",
    "ExportFormat",
    "Histogram",
    "IllegalTransitionError",
    "IncompatibleFormatError",
    "InputSyntaxError",
    "IntegrityError",
    "InvalidCatalogError",
    "KeyValue",
    "KgSelectError",
    "KnowledgeGraph",
    "KpiRequirement",
    "Kvi",
    "KviCategory",
    "Node",
    "NodeKind",
    "NotFoundError",
    "NotRemovedError",
    "Pillar",
    "PragmaticCandidate",
    "PruneConfig",
    "PruneOutcome",
    "ReplayMismatchError",
    "SchemaError",
    "Session",
    "SessionClosedError",
    "SessionStatus",
    "SessionStore",
    "SnapshotStore",
    "StageKind",
    "StageRecord",
    "TechnicalRequirement",
    "UnknownNodeError",
    "Violation",
    "advance",
    "build_full_kg",
    "catalog_digest",
    "catalog_to_jsonable",
    "cluster_enablers",
    "coverage",
    "diff_catalog",
    "dumps_catalog",
    "enabler_kvis",
    "evaluate_once",
    "export",
    "graph_from_jsonable",
    "graph_to_jsonable",
    "import_graph",
    "kpi_histogram",
    "kpi_score",
    "kv_satisfied",
    "load_catalog",
    "load_catalog_path",
    "new_session",
    "node_weight",
    "parse_catalog",
    "pragmatic_candidates",
    "prioritize",
    "prune_by_kpi",
    "reintroduce",
    "repair_dependencies",
    "replay_events",
    "run_batch",
    "select_in_clusters",
    "subgraph",
    "validate_catalog",
]
