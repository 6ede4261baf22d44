"""HTTP/JSON API over the selection pipeline.

One process serves many catalogs and sessions. Session writes are
serialized per session id; reads work on immutable snapshots and need no
locks. Every accepted decision is appended to a JSONL log before the
response is sent, so a restarted server replays its way back to the
exact same state.
"""

from __future__ import annotations

import logging
import tempfile
import threading
from contextlib import asynccontextmanager
from pathlib import Path
from typing import Any, Mapping

from fastapi import Body, FastAPI, Request, Response
from fastapi.responses import JSONResponse

from .catalog import Catalog, catalog_to_jsonable, parse_catalog
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
    SchemaError,
    SessionClosedError,
    UnknownNodeError,
)
from .graph import build_full_kg, graph_from_jsonable
from .persist import SessionStore
from .pipeline import (
    Decision,
    Session,
    StageKind,
    advance,
    created_event,
    evaluate_once,
    new_session,
    replay_events,
    stage_event,
)
from .pruning import PruneConfig
from .reports import CONTENT_TYPES, ExportFormat, export, render_session_log
from .scoring import histogram_from_jsonable

logger = logging.getLogger(__name__)

_STATUS_BY_ERROR: tuple[tuple[type, int], ...] = (
    (InputSyntaxError, 400),
    (SchemaError, 400),
    (ConfigError, 400),
    (IntegrityError, 400),
    (InvalidCatalogError, 400),
    (NotFoundError, 404),
    (UnknownNodeError, 404),
    (IllegalTransitionError, 409),
    (SessionClosedError, 409),
    (EmptyScheduleError, 409),
    (NotRemovedError, 409),
    (EmptyGapSetError, 409),
    (IncompatibleFormatError, 409),
)


def _http_status(exc: KgSelectError) -> int:
    for cls, status in _STATUS_BY_ERROR:
        if isinstance(exc, cls):
            return status
    return 500


class _AppState:
    """All mutable server state, hanging off the FastAPI app."""

    def __init__(self, data_dir: Path) -> None:
        self.store = SessionStore(data_dir)
        self.catalogs: dict[str, Catalog] = {}
        self.sessions: dict[str, Session] = {}
        self._meta_lock = threading.Lock()
        self._session_locks: dict[str, threading.Lock] = {}

    def session_lock(self, session_id: str) -> threading.Lock:
        with self._meta_lock:
            return self._session_locks.setdefault(session_id, threading.Lock())

    def catalog(self, digest: str) -> Catalog:
        found = self.catalogs.get(digest)
        if found is None:
            raise NotFoundError(f"no catalog '{digest}'")
        return found

    def session(self, session_id: str) -> Session:
        found = self.sessions.get(session_id)
        if found is None:
            raise NotFoundError(f"no session '{session_id}'")
        return found

    def replay_all(self) -> None:
        for digest in self.store.list_catalogs():
            self.catalogs[digest] = self.store.load_catalog(digest)
        for session_id in self.store.list_sessions():
            events = self.store.read_events(session_id)
            session = replay_events(events, self.store.load_catalog, self.store.snapshots)
            self.sessions[session.id] = session
            logger.info(
                "replayed session %s to stage %s",
                session.id,
                session.current_stage.kind.value,
            )


def _require(payload: Any, where: str) -> Mapping[str, Any]:
    if not isinstance(payload, Mapping):
        raise SchemaError(f"{where}: request body must be a JSON object")
    return payload


def _config_from_overrides(overrides: Any) -> PruneConfig:
    if overrides is None:
        return PruneConfig()
    if not isinstance(overrides, Mapping):
        raise SchemaError("config must be a JSON object of configuration overrides")
    return PruneConfig().with_overrides(overrides)


def _stage_jsonable(session: Session, stage_index: int | None = None) -> dict[str, Any]:
    stage = session.stages[stage_index if stage_index is not None else -1]
    return {
        "seq": stage.seq,
        "kind": stage.kind.value,
        "decision": stage.decision.to_jsonable() if stage.decision else None,
        "snapshots": dict(stage.snapshots),
        "info": dict(stage.info),
    }


def session_view(session: Session, state: _AppState) -> dict[str, Any]:
    """ApiSessionView: status, current stage, config, summary counts, links."""
    counts: dict[str, Any] = {"nodes": None, "edges": None, "retained": None, "removed": None}
    outcome_stage = None
    for stage in reversed(session.stages):
        if "outcome" in stage.snapshots:
            outcome_stage = stage
            break
    if outcome_stage is not None:
        outcome = state.store.snapshots.get(outcome_stage.snapshots["outcome"])
        counts["nodes"] = len(outcome["graph"]["nodes"])
        counts["edges"] = len(outcome["graph"]["edges"])
        counts["retained"] = len(outcome["retained"])
        counts["removed"] = len(outcome["removed"])
    else:
        full_stage = session.latest(StageKind.FULL_KG)
        if full_stage is not None:
            graph = state.store.snapshots.get(full_stage.snapshots["graph"])
            enablers = sum(1 for n in graph["nodes"] if n["kind"] == "enabler")
            counts.update(
                nodes=len(graph["nodes"]),
                edges=len(graph["edges"]),
                retained=enablers,
                removed=0,
            )
    base = f"/sessions/{session.id}"
    return {
        "id": session.id,
        "status": session.status.value,
        "catalog_id": session.catalog_digest,
        "current_stage": _stage_jsonable(session),
        "config": session.config.to_jsonable(),
        "pragmatic_iteration": session.pragmatic_iteration,
        "restart_index": session.restart_index,
        "counts": counts,
        "stages": [_stage_jsonable(session, i) for i in range(len(session.stages))],
        "links": {
            "self": base,
            "graph": f"{base}/graph",
            "histogram": f"{base}/histogram",
            "coverage": f"{base}/coverage",
            "candidates": f"{base}/candidates",
            "export": f"{base}/export",
        },
    }


def _persist_new(state: _AppState, session: Session) -> None:
    events = [created_event(session)]
    events.extend(stage_event(session, stage) for stage in session.stages)
    state.store.append_events(session.id, events)


def _graph_at_stage(session: Session, state: _AppState, stage: Any) -> Mapping[str, Any]:
    stages = session.stages
    if stage is not None:
        try:
            seq = int(stage)
        except (TypeError, ValueError):
            raise SchemaError("stage must be an integer stage sequence number") from None
        if seq < 0 or seq >= len(stages):
            raise NotFoundError(f"session '{session.id}' has no stage {seq}")
        stages = stages[: seq + 1]
    for record in reversed(stages):
        if "outcome" in record.snapshots:
            return state.store.snapshots.get(record.snapshots["outcome"])["graph"]
        if "graph" in record.snapshots:
            return state.store.snapshots.get(record.snapshots["graph"])
    raise NotFoundError("no graph has been built at this stage yet")


def _latest_snapshot(session: Session, state: _AppState, role: str, what: str) -> Any:
    for record in reversed(session.stages):
        if role in record.snapshots:
            return state.store.snapshots.get(record.snapshots[role])
    raise NotFoundError(f"session '{session.id}' has no {what} yet")


def create_app(data_dir: str | Path | None = None) -> FastAPI:
    """Build the API app; ``data_dir`` is the persistence root (a temporary
    directory is used when omitted, e.g. for throwaway sessions)."""
    if data_dir is None:
        scratch = tempfile.TemporaryDirectory(prefix="kgselect-")
        data_dir = scratch.name
    else:
        scratch = None
    state = _AppState(Path(data_dir))
    state.replay_all()

    @asynccontextmanager
    async def lifespan(app: FastAPI):
        yield
        if scratch is not None:
            scratch.cleanup()

    app = FastAPI(title="kgselect", version="0.1.0", lifespan=lifespan)
    app.state.kg = state

    @app.exception_handler(KgSelectError)
    def on_domain_error(request: Request, exc: KgSelectError) -> JSONResponse:
        return JSONResponse(
            status_code=_http_status(exc),
            content={"error": {"code": exc.code, "message": str(exc)}},
        )

    # -- catalogs ----------------------------------------------------------

    @app.post("/catalogs", status_code=201)
    def upload_catalog(payload: dict = Body(...)) -> dict[str, Any]:
        catalog = parse_catalog(_require(payload, "POST /catalogs"))
        digest = state.store.save_catalog(catalog)
        state.catalogs[digest] = catalog
        return {
            "catalog_id": digest,
            "use_case_name": catalog.use_case_name,
            "enablers": len(catalog.enablers),
            "principles": len(catalog.principles),
            "kpis": len(catalog.kpis),
            "kvis": len(catalog.kvis),
        }

    @app.get("/catalogs")
    def list_catalogs() -> list[dict[str, Any]]:
        return [
            {
                "catalog_id": digest,
                "use_case_name": catalog.use_case_name,
                "enablers": len(catalog.enablers),
            }
            for digest, catalog in sorted(state.catalogs.items())
        ]

    @app.get("/catalogs/{catalog_id}")
    def get_catalog(catalog_id: str) -> dict[str, Any]:
        return catalog_to_jsonable(state.catalog(catalog_id))

    # -- sessions ----------------------------------------------------------

    @app.post("/sessions", status_code=201)
    def create_session(payload: dict = Body(...)) -> dict[str, Any]:
        body = _require(payload, "POST /sessions")
        unknown = sorted(set(body) - {"catalog_id", "config"})
        if unknown:
            raise SchemaError(f"POST /sessions: unknown field(s) {', '.join(unknown)}")
        if "catalog_id" not in body:
            raise SchemaError("POST /sessions: catalog_id is required")
        catalog = state.catalog(body["catalog_id"])
        cfg = _config_from_overrides(body.get("config"))
        session = new_session(catalog, cfg, state.store.snapshots)
        session = advance(session, Decision.proceed(), catalog, state.store.snapshots)
        with state.session_lock(session.id):
            state.sessions[session.id] = session
            _persist_new(state, session)
        return session_view(session, state)

    @app.get("/sessions")
    def list_sessions() -> list[dict[str, Any]]:
        return [
            session_view(session, state)
            for _, session in sorted(state.sessions.items())
        ]

    @app.get("/sessions/{session_id}")
    def get_session(session_id: str) -> dict[str, Any]:
        return session_view(state.session(session_id), state)

    @app.post("/sessions/{session_id}/advance")
    def advance_session(session_id: str, payload: dict = Body(...)) -> dict[str, Any]:
        decision = Decision.from_jsonable(_require(payload, "POST advance"))
        with state.session_lock(session_id):
            session = state.session(session_id)
            catalog = state.catalog(session.catalog_digest)
            session = advance(session, decision, catalog, state.store.snapshots)
            state.store.append_event(session_id, stage_event(session))
            state.sessions[session_id] = session
        return session_view(session, state)

    @app.get("/sessions/{session_id}/graph")
    def get_graph(session_id: str, stage: str | None = None) -> Any:
        session = state.session(session_id)
        return _graph_at_stage(session, state, stage)

    @app.get("/sessions/{session_id}/histogram")
    def get_histogram(session_id: str) -> Any:
        return _latest_snapshot(state.session(session_id), state, "histogram", "histogram")

    @app.get("/sessions/{session_id}/coverage")
    def get_coverage(session_id: str) -> Any:
        return _latest_snapshot(state.session(session_id), state, "coverage", "coverage report")

    @app.get("/sessions/{session_id}/candidates")
    def get_candidates(session_id: str) -> Any:
        return _latest_snapshot(state.session(session_id), state, "candidates", "candidate list")

    @app.post("/sessions/{session_id}/whatif")
    def whatif(session_id: str, payload: dict | None = Body(None)) -> dict[str, Any]:
        session = state.session(session_id)
        catalog = state.catalog(session.catalog_digest)
        overrides = _require(payload, "POST whatif") if payload is not None else {}
        cfg = session.config.with_overrides(overrides)
        full_stage = session.latest(StageKind.FULL_KG)
        if full_stage is None:
            raise IllegalTransitionError("session has no full graph to evaluate against")
        full = graph_from_jsonable(state.store.snapshots.get(full_stage.snapshots["graph"]))
        result = evaluate_once(full, catalog, cfg)
        return {
            "config": cfg.to_jsonable(),
            "outcome": result.outcome.to_jsonable(),
            "coverage": result.coverage.to_jsonable(),
            "candidates": [c.to_jsonable() for c in result.candidates],
            "histogram": result.histogram.to_jsonable(),
            "clusters": [c.to_jsonable() for c in result.clusters],
        }

    @app.get("/sessions/{session_id}/export")
    def export_session(session_id: str, fmt: str) -> Response:
        session = state.session(session_id)
        try:
            chosen = ExportFormat(fmt)
        except ValueError:
            allowed = ", ".join(f.value for f in ExportFormat)
            raise SchemaError(f"unknown export format {fmt!r}; expected one of [{allowed}]") from None
        if chosen in (ExportFormat.GRAPH_JSON, ExportFormat.DOT, ExportFormat.GRAPHML):
            graph = graph_from_jsonable(_graph_at_stage(session, state, None))
            body = export(graph, chosen)
        elif chosen is ExportFormat.HISTOGRAM_CSV:
            doc = _latest_snapshot(session, state, "histogram", "histogram")
            body = export(histogram_from_jsonable(doc), chosen)
        elif chosen is ExportFormat.COVERAGE_JSON:
            doc = _latest_snapshot(session, state, "coverage", "coverage report")
            body = export(doc, chosen)
        elif chosen is ExportFormat.SESSION_LOG:
            body = (
                state.store.read_log_bytes(session_id)
                if state.store.has_session(session_id)
                else render_session_log(session)
            )
        else:
            body = export(session, chosen, state.store.snapshots)
        return Response(content=body, media_type=CONTENT_TYPES[chosen])

    return app
