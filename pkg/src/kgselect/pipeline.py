"""Interactive selection sessions and the batch driver.

A session walks the staged pipeline over one catalog: build the full
graph, prioritize by maturity, cluster, prune by KPI score, analyze KVI
coverage, then loop on pragmatic re-introduction until satisfied, with
threshold restarts as a fallback. Stages are append-only; every stage
references content-addressed snapshots, so replaying the decision log
against the same catalog reproduces each snapshot bit for bit.
"""

from __future__ import annotations

import logging
import uuid
from dataclasses import dataclass, replace
from datetime import datetime, timezone
from enum import Enum
from typing import Any, Callable, Mapping, Sequence

from . import scoring
from .catalog import Catalog, catalog_digest
from .errors import (
    EmptyScheduleError,
    IllegalTransitionError,
    ReplayMismatchError,
    SchemaError,
    SessionClosedError,
)
from .graph import KnowledgeGraph, build_full_kg, diff_catalog, graph_from_jsonable, graph_to_jsonable
from .kvi import CoverageReport, PragmaticCandidate, coverage, pragmatic_candidates, reintroduce
from .persist import SnapshotStore
from .pruning import (
    Cluster,
    PruneConfig,
    PruneOutcome,
    cluster_enablers,
    outcome_from_jsonable,
    prioritize,
    prune_by_kpi,
    repair_dependencies,
    select_in_clusters,
    selection_rows,
)

logger = logging.getLogger(__name__)


class StageKind(str, Enum):
    LOADED = "Loaded"
    FULL_KG = "FullKG"
    PRIORITIZED = "Prioritized"
    CLUSTERED = "Clustered"
    PRUNED = "Pruned"
    COVERAGE_ANALYZED = "CoverageAnalyzed"
    PRAGMATIC_APPLIED = "PragmaticApplied"
    RESTARTED = "Restarted"
    FINALIZED = "Finalized"


class SessionStatus(str, Enum):
    IN_PROGRESS = "InProgress"
    FINALIZED = "Finalized"
    EXHAUSTED = "Exhausted"


class DecisionKind(str, Enum):
    PROCEED = "proceed"
    SET_THRESHOLDS = "set_thresholds"
    ACCEPT_CANDIDATES = "accept_candidates"
    FINALIZE = "finalize"
    RESTART = "restart"


@dataclass(frozen=True)
class Decision:
    kind: DecisionKind
    trl_min: int | None = None
    kpi_score_min: int | None = None
    ids: tuple[str, ...] = ()

    @staticmethod
    def proceed() -> "Decision":
        return Decision(DecisionKind.PROCEED)

    @staticmethod
    def set_thresholds(trl_min: int | None = None, kpi_score_min: int | None = None) -> "Decision":
        return Decision(DecisionKind.SET_THRESHOLDS, trl_min=trl_min, kpi_score_min=kpi_score_min)

    @staticmethod
    def accept_candidates(ids: Sequence[str]) -> "Decision":
        return Decision(DecisionKind.ACCEPT_CANDIDATES, ids=tuple(sorted(set(ids))))

    @staticmethod
    def finalize() -> "Decision":
        return Decision(DecisionKind.FINALIZE)

    @staticmethod
    def restart() -> "Decision":
        return Decision(DecisionKind.RESTART)

    def to_jsonable(self) -> dict[str, Any]:
        doc: dict[str, Any] = {"kind": self.kind.value}
        if self.kind is DecisionKind.SET_THRESHOLDS:
            doc["trl_min"] = self.trl_min
            doc["kpi_score_min"] = self.kpi_score_min
        if self.kind is DecisionKind.ACCEPT_CANDIDATES:
            doc["ids"] = list(self.ids)
        return doc

    @staticmethod
    def from_jsonable(obj: Mapping[str, Any]) -> "Decision":
        if not isinstance(obj, Mapping) or "kind" not in obj:
            raise SchemaError("decision must be an object with a 'kind' field")
        try:
            kind = DecisionKind(obj["kind"])
        except ValueError:
            allowed = ", ".join(k.value for k in DecisionKind)
            raise SchemaError(f"unknown decision kind {obj['kind']!r}; expected one of [{allowed}]") from None
        known = {"kind"}
        if kind is DecisionKind.SET_THRESHOLDS:
            known |= {"trl_min", "kpi_score_min"}
        if kind is DecisionKind.ACCEPT_CANDIDATES:
            known |= {"ids"}
        unknown = sorted(set(obj) - known)
        if unknown:
            raise SchemaError(f"decision '{kind.value}': unknown field(s) {', '.join(unknown)}")
        if kind is DecisionKind.SET_THRESHOLDS:
            trl_min = obj.get("trl_min")
            kpi_score_min = obj.get("kpi_score_min")
            if trl_min is None and kpi_score_min is None:
                raise SchemaError("decision 'set_thresholds' needs trl_min and/or kpi_score_min")
            for name, value in (("trl_min", trl_min), ("kpi_score_min", kpi_score_min)):
                if value is not None and (isinstance(value, bool) or not isinstance(value, int)):
                    raise SchemaError(f"decision 'set_thresholds': {name} must be an integer")
            return Decision.set_thresholds(trl_min, kpi_score_min)
        if kind is DecisionKind.ACCEPT_CANDIDATES:
            ids = obj.get("ids")
            if not isinstance(ids, list) or not ids or any(not isinstance(i, str) for i in ids):
                raise SchemaError("decision 'accept_candidates' needs a non-empty list of enabler ids")
            return Decision.accept_candidates(ids)
        return Decision(kind)


@dataclass(frozen=True)
class StageRecord:
    seq: int
    kind: StageKind
    timestamp: str
    decision: Decision | None
    snapshots: Mapping[str, str]
    info: Mapping[str, Any]


@dataclass(frozen=True)
class Session:
    id: str
    catalog_digest: str
    initial_config: PruneConfig
    config: PruneConfig
    stages: tuple[StageRecord, ...]
    pragmatic_iteration: int = 0
    restart_index: int = 0
    status: SessionStatus = SessionStatus.IN_PROGRESS

    @property
    def current_stage(self) -> StageRecord:
        return self.stages[-1]

    def latest(self, *kinds: StageKind) -> StageRecord | None:
        for stage in reversed(self.stages):
            if stage.kind in kinds:
                return stage
        return None


def _now() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="microseconds")


# ---------------------------------------------------------------------------
# snapshot helpers

def _put_outcome(store: SnapshotStore, outcome: PruneOutcome) -> str:
    return store.put(outcome.to_jsonable())


def _get_outcome(store: SnapshotStore, digest: str) -> PruneOutcome:
    return outcome_from_jsonable(store.get(digest))


def _get_graph(store: SnapshotStore, digest: str) -> KnowledgeGraph:
    return graph_from_jsonable(store.get(digest))


def _full_graph(session: Session, store: SnapshotStore) -> KnowledgeGraph:
    stage = session.latest(StageKind.FULL_KG)
    if stage is None:
        raise IllegalTransitionError("session has no full graph yet")
    return _get_graph(store, stage.snapshots["graph"])


def _current_outcome_stage(session: Session) -> StageRecord | None:
    return session.latest(StageKind.PRUNED, StageKind.PRAGMATIC_APPLIED)


# ---------------------------------------------------------------------------
# session lifecycle

def new_session(
    catalog: Catalog,
    cfg: PruneConfig,
    store: SnapshotStore,
    session_id: str | None = None,
) -> Session:
    """Create a session at the Loaded stage."""
    digest = catalog_digest(catalog)
    record = StageRecord(
        seq=0,
        kind=StageKind.LOADED,
        timestamp=_now(),
        decision=None,
        snapshots={},
        info={
            "catalog_digest": digest,
            "use_case_name": catalog.use_case_name,
            "enablers": len(catalog.enablers),
            "principles": len(catalog.principles),
            "kpis": len(catalog.kpis),
            "kvis": len(catalog.kvis),
        },
    )
    return Session(
        id=session_id or f"s-{uuid.uuid4().hex[:12]}",
        catalog_digest=digest,
        initial_config=cfg,
        config=cfg,
        stages=(record,),
    )


def _append(session: Session, record: StageRecord, **changes: Any) -> Session:
    return replace(session, stages=session.stages + (record,), **changes)


def advance(session: Session, decision: Decision, catalog: Catalog, store: SnapshotStore) -> Session:
    """Apply one decision, appending exactly one stage.

    Illegal decisions raise without mutating the session; sessions are
    immutable values, so callers keep the prior state on failure.
    """
    if session.status is not SessionStatus.IN_PROGRESS:
        raise SessionClosedError(
            f"session '{session.id}' is {session.status.value} and accepts no decisions"
        )
    if catalog_digest(catalog) != session.catalog_digest:
        raise IllegalTransitionError(
            "catalog does not match the session's catalog version; use refresh"
        )

    handlers = {
        DecisionKind.PROCEED: _proceed,
        DecisionKind.SET_THRESHOLDS: _set_thresholds,
        DecisionKind.ACCEPT_CANDIDATES: _accept_candidates,
        DecisionKind.FINALIZE: _finalize,
        DecisionKind.RESTART: _restart,
    }
    return handlers[decision.kind](session, decision, catalog, store)


def _illegal(session: Session, decision: Decision, why: str) -> IllegalTransitionError:
    return IllegalTransitionError(
        f"decision '{decision.kind.value}' is not legal at stage "
        f"'{session.current_stage.kind.value}': {why}"
    )


def _proceed(session: Session, decision: Decision, catalog: Catalog, store: SnapshotStore) -> Session:
    kind = session.current_stage.kind
    seq = len(session.stages)

    if kind is StageKind.LOADED:
        full = build_full_kg(catalog)
        record = StageRecord(
            seq=seq,
            kind=StageKind.FULL_KG,
            timestamp=_now(),
            decision=decision,
            snapshots={"graph": store.put(graph_to_jsonable(full))},
            info={"nodes": len(full.nodes), "edges": len(full.edges)},
        )
        return _append(session, record)

    if kind is StageKind.FULL_KG:
        full = _full_graph(session, store)
        outcome = prioritize(full, session.config)
        histogram = scoring.kpi_histogram(outcome.graph)
        record = StageRecord(
            seq=seq,
            kind=StageKind.PRIORITIZED,
            timestamp=_now(),
            decision=decision,
            snapshots={
                "outcome": _put_outcome(store, outcome),
                "histogram": store.put(histogram.to_jsonable()),
            },
            info={"retained": len(outcome.retained_ids), "removed": len(outcome.removed_ids)},
        )
        return _append(session, record)

    if kind is StageKind.PRIORITIZED:
        prior = _get_outcome(store, session.current_stage.snapshots["outcome"])
        clusters = cluster_enablers(prior.graph, catalog)
        outcome = select_in_clusters(clusters, prior.graph, session.config.cluster_policy)
        record = StageRecord(
            seq=seq,
            kind=StageKind.CLUSTERED,
            timestamp=_now(),
            decision=decision,
            snapshots={
                "outcome": _put_outcome(store, outcome),
                "clusters": store.put([c.to_jsonable() for c in clusters]),
            },
            info={
                "clusters": len(clusters),
                "policy": session.config.cluster_policy.value,
                "retained": len(outcome.retained_ids),
            },
        )
        return _append(session, record)

    if kind is StageKind.CLUSTERED or kind is StageKind.RESTARTED:
        base = _get_outcome(store, session.current_stage.snapshots["outcome"])
        return _append(session, _pruned_record(session, decision, base, catalog, store, seq))

    if kind is StageKind.PRUNED or kind is StageKind.PRAGMATIC_APPLIED:
        outcome = _get_outcome(store, session.current_stage.snapshots["outcome"])
        return _append(session, _coverage_record(session, decision, outcome, catalog, store, seq))

    raise _illegal(session, decision, "nothing to proceed to; a choice is required here")


def _pruned_record(
    session: Session,
    decision: Decision | None,
    base: PruneOutcome,
    catalog: Catalog,
    store: SnapshotStore,
    seq: int,
) -> StageRecord:
    full = _full_graph(session, store)
    outcome = prune_by_kpi(base.graph, session.config)
    outcome = repair_dependencies(outcome, full, session.config.dependency_policy)
    return StageRecord(
        seq=seq,
        kind=StageKind.PRUNED,
        timestamp=_now(),
        decision=decision,
        snapshots={
            "outcome": _put_outcome(store, outcome),
            "selection": store.put(selection_rows(outcome, catalog)),
        },
        info={
            "retained": len(outcome.retained_ids),
            "removed": len(outcome.removed_ids),
            "dependency_violations": len(outcome.dependency_violations),
            "kpi_score_min": session.config.kpi_score_min,
        },
    )


def _coverage_record(
    session: Session,
    decision: Decision | None,
    outcome: PruneOutcome,
    catalog: Catalog,
    store: SnapshotStore,
    seq: int,
) -> StageRecord:
    clusters = cluster_enablers(outcome.graph, catalog)
    report = coverage(outcome, clusters, catalog, session.config)
    full = _full_graph(session, store)
    candidates = (
        pragmatic_candidates(full, outcome, report, catalog) if report.gaps else ()
    )
    return StageRecord(
        seq=seq,
        kind=StageKind.COVERAGE_ANALYZED,
        timestamp=_now(),
        decision=decision,
        snapshots={
            "coverage": store.put(report.to_jsonable()),
            "clusters": store.put([c.to_jsonable() for c in clusters]),
            "candidates": store.put([c.to_jsonable() for c in candidates]),
            "outcome": _put_outcome(store, outcome),
        },
        info={
            "clusters": len(clusters),
            "satisfied": not report.gaps,
            "gaps": sorted(c.value for c in report.gaps),
            "candidates": len(candidates),
        },
    )


def _set_thresholds(session: Session, decision: Decision, catalog: Catalog, store: SnapshotStore) -> Session:
    kind = session.current_stage.kind
    if kind not in (StageKind.FULL_KG, StageKind.PRIORITIZED, StageKind.CLUSTERED):
        raise _illegal(session, decision, "thresholds can only change before KPI pruning (or via restart)")
    overrides: dict[str, Any] = {}
    if decision.trl_min is not None:
        overrides["trl_min"] = decision.trl_min
    if decision.kpi_score_min is not None:
        overrides["kpi_score_min"] = decision.kpi_score_min
    cfg = session.config.with_overrides(overrides)
    seq = len(session.stages)
    info = {"trl_min": cfg.trl_min, "kpi_score_min": cfg.kpi_score_min}

    if kind is StageKind.FULL_KG:
        record = StageRecord(
            seq=seq,
            kind=StageKind.FULL_KG,
            timestamp=_now(),
            decision=decision,
            snapshots=dict(session.current_stage.snapshots),
            info=info,
        )
        return _append(session, record, config=cfg)

    full = _full_graph(session, store)
    outcome = prioritize(full, cfg)
    if kind is StageKind.PRIORITIZED:
        histogram = scoring.kpi_histogram(outcome.graph)
        record = StageRecord(
            seq=seq,
            kind=StageKind.PRIORITIZED,
            timestamp=_now(),
            decision=decision,
            snapshots={
                "outcome": _put_outcome(store, outcome),
                "histogram": store.put(histogram.to_jsonable()),
            },
            info={**info, "retained": len(outcome.retained_ids)},
        )
        return _append(session, record, config=cfg)

    clusters = cluster_enablers(outcome.graph, catalog)
    selected = select_in_clusters(clusters, outcome.graph, cfg.cluster_policy)
    record = StageRecord(
        seq=seq,
        kind=StageKind.CLUSTERED,
        timestamp=_now(),
        decision=decision,
        snapshots={
            "outcome": _put_outcome(store, selected),
            "clusters": store.put([c.to_jsonable() for c in clusters]),
        },
        info={**info, "clusters": len(clusters)},
    )
    return _append(session, record, config=cfg)


def _accept_candidates(session: Session, decision: Decision, catalog: Catalog, store: SnapshotStore) -> Session:
    if session.current_stage.kind is not StageKind.COVERAGE_ANALYZED:
        raise _illegal(session, decision, "candidates can only be accepted after coverage analysis")
    report = store.get(session.current_stage.snapshots["coverage"])
    if report["satisfied"]:
        raise _illegal(session, decision, "coverage is already satisfied")
    if session.pragmatic_iteration >= session.config.max_pragmatic_iterations:
        raise _illegal(
            session,
            decision,
            f"pragmatic iteration budget of {session.config.max_pragmatic_iterations} is spent; restart instead",
        )
    outcome = _get_outcome(store, session.current_stage.snapshots["outcome"])
    full = _full_graph(session, store)
    updated = reintroduce(outcome, full, decision.ids)
    seq = len(session.stages)
    record = StageRecord(
        seq=seq,
        kind=StageKind.PRAGMATIC_APPLIED,
        timestamp=_now(),
        decision=decision,
        snapshots={
            "outcome": _put_outcome(store, updated),
            "selection": store.put(selection_rows(updated, catalog)),
        },
        info={
            "accepted": list(decision.ids),
            "pragmatic_iteration": session.pragmatic_iteration + 1,
            "retained": len(updated.retained_ids),
        },
    )
    return _append(session, record, pragmatic_iteration=session.pragmatic_iteration + 1)


def _finalize(session: Session, decision: Decision, catalog: Catalog, store: SnapshotStore) -> Session:
    if session.current_stage.kind is not StageKind.COVERAGE_ANALYZED:
        raise _illegal(session, decision, "finalize is only available after coverage analysis")
    report = store.get(session.current_stage.snapshots["coverage"])
    if not report["satisfied"]:
        raise _illegal(session, decision, "coverage gaps remain; accept candidates or restart")
    outcome = _get_outcome(store, session.current_stage.snapshots["outcome"])
    seq = len(session.stages)
    record = StageRecord(
        seq=seq,
        kind=StageKind.FINALIZED,
        timestamp=_now(),
        decision=decision,
        snapshots={
            "outcome": session.current_stage.snapshots["outcome"],
            "coverage": session.current_stage.snapshots["coverage"],
            "selection": store.put(selection_rows(outcome, catalog)),
        },
        info={"retained": len(outcome.retained_ids)},
    )
    return _append(session, record, status=SessionStatus.FINALIZED)


def _restart(session: Session, decision: Decision, catalog: Catalog, store: SnapshotStore) -> Session:
    if session.current_stage.kind is not StageKind.COVERAGE_ANALYZED:
        raise _illegal(session, decision, "restart is only available after coverage analysis")
    report = store.get(session.current_stage.snapshots["coverage"])
    if report["satisfied"]:
        raise _illegal(session, decision, "coverage is satisfied; finalize instead")
    candidates = store.get(session.current_stage.snapshots["candidates"])
    if candidates and session.pragmatic_iteration < session.config.max_pragmatic_iterations:
        raise _illegal(
            session,
            decision,
            "pragmatic candidates remain and the iteration budget is not spent",
        )
    if session.restart_index >= len(session.config.threshold_schedule):
        raise EmptyScheduleError(
            f"no threshold schedule entry left (restart_index={session.restart_index})"
        )
    trl_min, kpi_score_min = session.config.threshold_schedule[session.restart_index]
    cfg = session.config.with_overrides({"trl_min": trl_min, "kpi_score_min": kpi_score_min})
    full = _full_graph(session, store)
    prioritized = prioritize(full, cfg)
    clusters = cluster_enablers(prioritized.graph, catalog)
    base = select_in_clusters(clusters, prioritized.graph, cfg.cluster_policy)
    histogram = scoring.kpi_histogram(prioritized.graph)
    seq = len(session.stages)
    record = StageRecord(
        seq=seq,
        kind=StageKind.RESTARTED,
        timestamp=_now(),
        decision=decision,
        snapshots={
            "outcome": _put_outcome(store, base),
            "clusters": store.put([c.to_jsonable() for c in clusters]),
            "histogram": store.put(histogram.to_jsonable()),
        },
        info={
            "trl_min": trl_min,
            "kpi_score_min": kpi_score_min,
            "restart_index": session.restart_index + 1,
        },
    )
    return _append(
        session,
        record,
        config=cfg,
        pragmatic_iteration=0,
        restart_index=session.restart_index + 1,
    )


def refresh(session: Session, catalog: Catalog, store: SnapshotStore) -> Session:
    """Rebuild against a new catalog version within the same session.

    A no-op when the rebuilt graph matches the current full graph. Otherwise
    a fresh FullKG stage starts a new pass, preserving config (including
    carry-overs) and the full decision history. This is the one operation
    allowed on a closed session: new knowledge reopens it.
    """
    full_stage = session.latest(StageKind.FULL_KG)
    if full_stage is not None:
        current_full = _get_graph(store, full_stage.snapshots["graph"])
        if diff_catalog(current_full, catalog).is_empty():
            return session
    full = build_full_kg(catalog)
    digest = catalog_digest(catalog)
    record = StageRecord(
        seq=len(session.stages),
        kind=StageKind.FULL_KG,
        timestamp=_now(),
        decision=None,
        snapshots={"graph": store.put(graph_to_jsonable(full))},
        info={
            "catalog_digest": digest,
            "nodes": len(full.nodes),
            "edges": len(full.edges),
            "refreshed": True,
        },
    )
    return _append(
        session,
        record,
        catalog_digest=digest,
        pragmatic_iteration=0,
        restart_index=0,
        status=SessionStatus.IN_PROGRESS,
    )


# ---------------------------------------------------------------------------
# batch driver

def auto_decision(session: Session, store: SnapshotStore) -> Decision | None:
    """The batch policy: proceed through mechanical stages, accept the top
    candidate per gap, restart when the loop budget is spent, give up (None)
    when the schedule is consumed."""
    kind = session.current_stage.kind
    if kind is not StageKind.COVERAGE_ANALYZED:
        return Decision.proceed()
    report = store.get(session.current_stage.snapshots["coverage"])
    if report["satisfied"]:
        return Decision.finalize()
    candidates = store.get(session.current_stage.snapshots["candidates"])
    if candidates and session.pragmatic_iteration < session.config.max_pragmatic_iterations:
        picked: list[str] = []
        for gap in report["gaps"]:
            for candidate in candidates:  # already rank-ordered
                if gap in candidate["gap_categories_addressed"]:
                    picked.append(candidate["enabler_id"])
                    break
        if picked:
            return Decision.accept_candidates(picked)
    if session.restart_index < len(session.config.threshold_schedule):
        return Decision.restart()
    return None


def run_batch(
    catalog: Catalog,
    cfg: PruneConfig,
    store: SnapshotStore | None = None,
    session_id: str | None = None,
    on_event: Callable[[dict[str, Any]], None] | None = None,
) -> Session:
    """Run the full pipeline unattended.

    Ends Finalized when coverage is satisfied, or Exhausted once the
    pragmatic loop and every threshold schedule entry are spent.
    """
    store = store if store is not None else SnapshotStore()
    session = new_session(catalog, cfg, store, session_id)
    if on_event is not None:
        on_event(created_event(session))
        on_event(stage_event(session))
    while session.status is SessionStatus.IN_PROGRESS:
        decision = auto_decision(session, store)
        if decision is None:
            session = replace(session, status=SessionStatus.EXHAUSTED)
            if on_event is not None:
                on_event(status_event(session))
            logger.info("session %s exhausted its threshold schedule", session.id)
            break
        session = advance(session, decision, catalog, store)
        if on_event is not None:
            on_event(stage_event(session))
    return session


# ---------------------------------------------------------------------------
# event log round-trip

def created_event(session: Session) -> dict[str, Any]:
    return {
        "event": "created",
        "session_id": session.id,
        "catalog_digest": session.stages[0].info["catalog_digest"],
        "config": session.initial_config.to_jsonable(),
        "ts": session.stages[0].timestamp,
    }


def stage_event(session: Session, stage: StageRecord | None = None) -> dict[str, Any]:
    stage = stage if stage is not None else session.current_stage
    # Status as of the append: only a Finalized stage closes the session
    # inside advance(); Exhausted is marked afterwards by its own event.
    status = (
        SessionStatus.FINALIZED
        if stage.kind is StageKind.FINALIZED
        else SessionStatus.IN_PROGRESS
    )
    return {
        "event": "stage",
        "seq": stage.seq,
        "kind": stage.kind.value,
        "decision": stage.decision.to_jsonable() if stage.decision else None,
        "snapshots": dict(stage.snapshots),
        "info": dict(stage.info),
        "state": {"status": status.value},
        "ts": stage.timestamp,
    }


def status_event(session: Session) -> dict[str, Any]:
    return {
        "event": "status",
        "status": session.status.value,
        "ts": session.current_stage.timestamp,
    }


def refreshed_event(session: Session, stage: StageRecord) -> dict[str, Any]:
    return {
        "event": "refreshed",
        "catalog_digest": stage.info["catalog_digest"],
        "ts": stage.timestamp,
    }


def events_for(session: Session) -> list[dict[str, Any]]:
    """Regenerate the complete event log for a session."""
    events = [created_event(session)]
    for stage in session.stages:
        if stage.kind is StageKind.FULL_KG and stage.decision is None:
            events.append(refreshed_event(session, stage))
        events.append(stage_event(session, stage))
    if session.status is SessionStatus.EXHAUSTED:
        events.append(status_event(session))
    return events


def replay_events(
    events: Sequence[Mapping[str, Any]],
    catalog_lookup: Callable[[str], Catalog],
    store: SnapshotStore,
    verify: bool = True,
) -> Session:
    """Re-execute a session log, verifying every snapshot digest."""
    if not events or events[0].get("event") != "created":
        raise ReplayMismatchError("session log must start with a 'created' event")
    header = events[0]
    catalog = catalog_lookup(header["catalog_digest"])
    cfg = PruneConfig.from_jsonable(header["config"])
    session = new_session(catalog, cfg, store, header["session_id"])

    def check(stage: StageRecord, event: Mapping[str, Any]) -> None:
        if not verify:
            return
        if stage.kind.value != event["kind"] or stage.seq != event["seq"]:
            raise ReplayMismatchError(
                f"stage {stage.seq} replayed as {stage.kind.value}, log says "
                f"{event['seq']}/{event['kind']}"
            )
        if dict(stage.snapshots) != dict(event["snapshots"]):
            raise ReplayMismatchError(
                f"stage {stage.seq} ({stage.kind.value}) snapshots diverge from the log"
            )

    if len(events) < 2 or events[1].get("event") != "stage":
        raise ReplayMismatchError("session log has no Loaded stage event")
    check(session.stages[0], events[1])

    index = 2  # past created + Loaded
    while index < len(events):
        event = events[index]
        if event.get("event") == "refreshed":
            catalog = catalog_lookup(event["catalog_digest"])
            session = refresh(session, catalog, store)
            index += 1
            if index >= len(events):
                raise ReplayMismatchError("session log ends mid-refresh")
            check(session.current_stage, events[index])
            index += 1
            continue
        if event.get("event") == "status":
            session = replace(session, status=SessionStatus(event["status"]))
            index += 1
            continue
        if event.get("event") != "stage":
            raise ReplayMismatchError(f"unexpected event {event.get('event')!r} in session log")
        decision = Decision.from_jsonable(event["decision"]) if event["decision"] else None
        if decision is None:
            raise ReplayMismatchError(f"stage event {event['seq']} has no decision and is not a refresh")
        session = advance(session, decision, catalog, store)
        check(session.current_stage, event)
        index += 1
    return session


# ---------------------------------------------------------------------------
# one-shot evaluation (what-if)

@dataclass(frozen=True)
class Evaluation:
    prioritized: PruneOutcome
    histogram: scoring.Histogram
    clusters: tuple[Cluster, ...]
    outcome: PruneOutcome
    coverage: CoverageReport
    candidates: tuple[PragmaticCandidate, ...]


def evaluate_once(full: KnowledgeGraph, catalog: Catalog, cfg: PruneConfig) -> Evaluation:
    """One non-interactive pass: prioritize, cluster, prune, analyze.

    This is the stateless what-if path; it never touches session state.
    """
    prioritized = prioritize(full, cfg)
    histogram = scoring.kpi_histogram(prioritized.graph)
    pre_clusters = cluster_enablers(prioritized.graph, catalog)
    selected = select_in_clusters(pre_clusters, prioritized.graph, cfg.cluster_policy)
    outcome = prune_by_kpi(selected.graph, cfg)
    outcome = repair_dependencies(outcome, full, cfg.dependency_policy)
    clusters = tuple(cluster_enablers(outcome.graph, catalog))
    report = coverage(outcome, clusters, catalog, cfg)
    candidates = pragmatic_candidates(full, outcome, report, catalog) if report.gaps else ()
    return Evaluation(
        prioritized=prioritized,
        histogram=histogram,
        clusters=clusters,
        outcome=outcome,
        coverage=report,
        candidates=candidates,
    )


def session_to_jsonable(session: Session) -> dict[str, Any]:
    return {
        "id": session.id,
        "catalog_digest": session.catalog_digest,
        "status": session.status.value,
        "config": session.config.to_jsonable(),
        "initial_config": session.initial_config.to_jsonable(),
        "pragmatic_iteration": session.pragmatic_iteration,
        "restart_index": session.restart_index,
        "stages": [
            {
                "seq": stage.seq,
                "kind": stage.kind.value,
                "decision": stage.decision.to_jsonable() if stage.decision else None,
                "snapshots": dict(stage.snapshots),
                "info": dict(stage.info),
            }
            for stage in session.stages
        ],
    }
