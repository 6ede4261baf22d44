"""Durable storage: content-addressed snapshots and append-only session logs.

A snapshot store maps canonical JSON documents to their sha256 digest;
identical content always shares one entry. A session store adds catalog
documents and one JSON-lines event log per session on disk, so a process
can be restarted and every session replayed from its log.
"""

from __future__ import annotations

import logging
from pathlib import Path
from typing import Any, Iterable

from .canonical import canonical_bytes, content_digest
from .catalog import Catalog, catalog_digest, dumps_catalog, load_catalog
from .errors import NotFoundError

logger = logging.getLogger(__name__)


class SnapshotStore:
    """Content-addressed store; optionally backed by a directory."""

    def __init__(self, directory: str | Path | None = None) -> None:
        self._dir = Path(directory) if directory is not None else None
        if self._dir is not None:
            self._dir.mkdir(parents=True, exist_ok=True)
        self._cache: dict[str, Any] = {}

    def put(self, jsonable: Any) -> str:
        digest = content_digest(jsonable)
        if digest not in self._cache:
            self._cache[digest] = jsonable
            if self._dir is not None:
                path = self._dir / f"{digest}.json"
                if not path.exists():
                    path.write_bytes(canonical_bytes(jsonable))
        return digest

    def get(self, digest: str) -> Any:
        if digest in self._cache:
            return self._cache[digest]
        if self._dir is not None:
            path = self._dir / f"{digest}.json"
            if path.exists():
                import json

                jsonable = json.loads(path.read_text("utf-8"))
                self._cache[digest] = jsonable
                return jsonable
        raise NotFoundError(f"unknown snapshot '{digest}'")

    def get_bytes(self, digest: str) -> bytes:
        return canonical_bytes(self.get(digest))

    def __contains__(self, digest: str) -> bool:
        try:
            self.get(digest)
        except NotFoundError:
            return False
        return True


class SessionStore:
    """Directory layout: catalogs/, sessions/ (one .jsonl each), snapshots/."""

    def __init__(self, root: str | Path) -> None:
        self.root = Path(root)
        (self.root / "catalogs").mkdir(parents=True, exist_ok=True)
        (self.root / "sessions").mkdir(parents=True, exist_ok=True)
        self.snapshots = SnapshotStore(self.root / "snapshots")

    # -- catalogs

    def save_catalog(self, catalog: Catalog) -> str:
        digest = catalog_digest(catalog)
        path = self.root / "catalogs" / f"{digest}.json"
        if not path.exists():
            path.write_bytes(dumps_catalog(catalog))
        return digest

    def load_catalog(self, digest: str) -> Catalog:
        path = self.root / "catalogs" / f"{digest}.json"
        if not path.exists():
            raise NotFoundError(f"unknown catalog '{digest}'")
        return load_catalog(path.read_bytes(), "json")

    def has_catalog(self, digest: str) -> bool:
        return (self.root / "catalogs" / f"{digest}.json").exists()

    def list_catalogs(self) -> list[str]:
        return sorted(p.stem for p in (self.root / "catalogs").glob("*.json"))

    # -- session event logs

    def _log_path(self, session_id: str) -> Path:
        return self.root / "sessions" / f"{session_id}.jsonl"

    def append_event(self, session_id: str, event: dict[str, Any]) -> None:
        with self._log_path(session_id).open("ab") as fh:
            fh.write(canonical_bytes(event) + b"\n")

    def append_events(self, session_id: str, events: Iterable[dict[str, Any]]) -> None:
        with self._log_path(session_id).open("ab") as fh:
            for event in events:
                fh.write(canonical_bytes(event) + b"\n")

    def read_events(self, session_id: str) -> list[dict[str, Any]]:
        import json

        path = self._log_path(session_id)
        if not path.exists():
            raise NotFoundError(f"unknown session '{session_id}'")
        events = []
        with path.open("r", encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if line:
                    events.append(json.loads(line))
        return events

    def read_log_bytes(self, session_id: str) -> bytes:
        path = self._log_path(session_id)
        if not path.exists():
            raise NotFoundError(f"unknown session '{session_id}'")
        return path.read_bytes()

    def has_session(self, session_id: str) -> bool:
        return self._log_path(session_id).exists()

    def list_sessions(self) -> list[str]:
        return sorted(p.stem for p in (self.root / "sessions").glob("*.jsonl"))
