"""Byte-deterministic exports for graphs, histograms, coverage and sessions.

Every renderer sorts its content (nodes and edges by id, rows by id,
buckets by score) so equal inputs always serialize to equal bytes and
session artifacts stay diff-able.
"""

from __future__ import annotations

import csv
import io
import json
import logging
from enum import Enum
from typing import Any, Mapping, Sequence
from xml.sax.saxutils import escape, quoteattr

from .canonical import canonical_dumps
from .errors import IncompatibleFormatError, InputSyntaxError
from .graph import KnowledgeGraph, graph_from_jsonable, graph_to_jsonable
from .kvi import CoverageReport
from .persist import SnapshotStore
from .pipeline import Session, StageKind, events_for
from .scoring import Histogram

logger = logging.getLogger(__name__)


class ExportFormat(str, Enum):
    GRAPH_JSON = "GraphJson"
    DOT = "Dot"
    GRAPHML = "GraphML"
    HISTOGRAM_CSV = "HistogramCsv"
    COVERAGE_JSON = "CoverageJson"
    SELECTION_CSV = "SelectionCsv"
    SESSION_LOG = "SessionLog"
    MARKDOWN_SUMMARY = "MarkdownSummary"


CONTENT_TYPES: Mapping[ExportFormat, str] = {
    ExportFormat.GRAPH_JSON: "application/json",
    ExportFormat.DOT: "text/vnd.graphviz; charset=utf-8",
    ExportFormat.GRAPHML: "application/graphml+xml",
    ExportFormat.HISTOGRAM_CSV: "text/csv; charset=utf-8",
    ExportFormat.COVERAGE_JSON: "application/json",
    ExportFormat.SELECTION_CSV: "text/csv; charset=utf-8",
    ExportFormat.SESSION_LOG: "application/x-ndjson",
    ExportFormat.MARKDOWN_SUMMARY: "text/markdown; charset=utf-8",
}

SELECTION_CSV_HEADER = ("id", "name", "category", "trl", "kpi_score", "reason")


# ---------------------------------------------------------------------------
# graph renderers

def render_graph_json(g: KnowledgeGraph) -> bytes:
    return (canonical_dumps(graph_to_jsonable(g)) + "\n").encode("utf-8")


def import_graph(source: bytes) -> KnowledgeGraph:
    """Parse bytes produced by the GraphJson renderer back into a graph."""
    try:
        obj = json.loads(source.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise InputSyntaxError(f"not valid graph JSON: {exc}") from exc
    return graph_from_jsonable(obj)


def _dot_id(raw: str) -> str:
    return '"' + raw.replace("\\", "\\\\").replace('"', '\\"') + '"'


def render_dot(g: KnowledgeGraph) -> bytes:
    doc = graph_to_jsonable(g)
    lines = ["graph kg {"]
    lines.append("  node [style=filled];")
    for node in doc["nodes"]:
        attrs = [
            f"label={_dot_id(node['id'])}",
            f"fillcolor={_dot_id(node['color'])}",
            f"shape={'ellipse' if node['kind'] == 'enabler' else 'box'}",
        ]
        if node["trl"] is not None:
            attrs.append(f"tooltip={_dot_id('trl=%d kpi_score=%d' % (node['trl'], node['kpi_score']))}")
        lines.append(f"  {_dot_id(node['id'])} [{', '.join(attrs)}];")
    for edge in doc["edges"]:
        attrs = f"color={_dot_id(edge['color'])}, weight={edge['weight']}"
        lines.append(f"  {_dot_id(edge['source'])} -- {_dot_id(edge['target'])} [{attrs}];")
    lines.append("}")
    return ("\n".join(lines) + "\n").encode("utf-8")


_GRAPHML_KEYS = (
    ("d_kind", "node", "kind", "string"),
    ("d_trl", "node", "trl", "int"),
    ("d_kpi_score", "node", "kpi_score", "int"),
    ("d_node_weight", "node", "weight", "int"),
    ("d_color", "node", "color", "string"),
    ("d_edge_kind", "edge", "kind", "string"),
    ("d_edge_weight", "edge", "weight", "int"),
    ("d_edge_color", "edge", "color", "string"),
)


def render_graphml(g: KnowledgeGraph) -> bytes:
    doc = graph_to_jsonable(g)
    out = io.StringIO()
    out.write('<?xml version="1.0" encoding="UTF-8"?>\n')
    out.write('<graphml xmlns="http://graphml.graphdrawing.org/xmlns">\n')
    for key_id, domain, name, typ in _GRAPHML_KEYS:
        out.write(
            f'  <key id="{key_id}" for="{domain}" attr.name="{name}" attr.type="{typ}"/>\n'
        )
    out.write('  <graph id="kg" edgedefault="undirected">\n')
    for node in doc["nodes"]:
        out.write(f"    <node id={quoteattr(node['id'])}>\n")
        out.write(f"      <data key=\"d_kind\">{escape(node['kind'])}</data>\n")
        if node["trl"] is not None:
            out.write(f"      <data key=\"d_trl\">{node['trl']}</data>\n")
        out.write(f"      <data key=\"d_kpi_score\">{node['kpi_score']}</data>\n")
        out.write(f"      <data key=\"d_node_weight\">{node['node_weight']}</data>\n")
        out.write(f"      <data key=\"d_color\">{escape(node['color'])}</data>\n")
        out.write("    </node>\n")
    for index, edge in enumerate(doc["edges"]):
        out.write(
            f'    <edge id="e{index}" source={quoteattr(edge["source"])} '
            f'target={quoteattr(edge["target"])}>\n'
        )
        out.write(f"      <data key=\"d_edge_kind\">{escape(edge['kind'])}</data>\n")
        out.write(f"      <data key=\"d_edge_weight\">{edge['weight']}</data>\n")
        out.write(f"      <data key=\"d_edge_color\">{escape(edge['color'])}</data>\n")
        out.write("    </edge>\n")
    out.write("  </graph>\n</graphml>\n")
    return out.getvalue().encode("utf-8")


# ---------------------------------------------------------------------------
# tabular renderers

def render_histogram_csv(histogram: Histogram) -> bytes:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["kpi_score", "count"])
    for score in sorted(histogram.buckets):
        writer.writerow([score, histogram.buckets[score]])
    return out.getvalue().encode("utf-8")


def render_coverage_json(report: CoverageReport | Mapping[str, Any]) -> bytes:
    doc = report.to_jsonable() if isinstance(report, CoverageReport) else dict(report)
    return (canonical_dumps(doc) + "\n").encode("utf-8")


def render_selection_csv(rows: Sequence[Mapping[str, Any]]) -> bytes:
    """Retained enablers as CSV, one row per enabler, sorted by id.

    Accepts the full decision universe and keeps only retained rows.
    """
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(SELECTION_CSV_HEADER)
    for row in sorted(rows, key=lambda r: r["id"]):
        if not row.get("retained", True):
            continue
        writer.writerow([row[col] for col in SELECTION_CSV_HEADER])
    return out.getvalue().encode("utf-8")


# ---------------------------------------------------------------------------
# session renderers

def render_session_log(session: Session) -> bytes:
    lines = [canonical_dumps(event) for event in events_for(session)]
    return ("\n".join(lines) + "\n").encode("utf-8")


def _config_rows(cfg_doc: Mapping[str, Any]) -> list[str]:
    rows = []
    for key in sorted(cfg_doc):
        value = cfg_doc[key]
        if isinstance(value, (dict, list)):
            value = json.dumps(value, sort_keys=True)
        rows.append(f"| {key} | `{value}` |")
    return rows


def render_markdown_summary(session: Session, store: SnapshotStore | None = None) -> bytes:
    """Human-readable audit trail: configuration, stage history, and the
    final selection with per-enabler reasons. Carries no timestamps, so
    equal sessions render to equal bytes."""
    lines: list[str] = []
    lines.append(f"# Selection session `{session.id}`")
    lines.append("")
    lines.append(f"- Status: **{session.status.value}**")
    lines.append(f"- Catalog digest: `{session.catalog_digest}`")
    lines.append(f"- Stages: {len(session.stages)}")
    lines.append(f"- Pragmatic iterations used: {session.pragmatic_iteration}")
    lines.append(f"- Threshold restarts used: {session.restart_index}")
    lines.append("")
    lines.append("## Configuration")
    lines.append("")
    lines.append("| setting | value |")
    lines.append("| --- | --- |")
    lines.extend(_config_rows(session.config.to_jsonable()))
    lines.append("")
    lines.append("## Stage history")
    lines.append("")
    lines.append("| seq | stage | decision | detail |")
    lines.append("| --- | --- | --- | --- |")
    for stage in session.stages:
        decision = stage.decision.kind.value if stage.decision else ""
        detail = ", ".join(
            f"{key}={stage.info[key]}" for key in sorted(stage.info) if key != "catalog_digest"
        )
        lines.append(f"| {stage.seq} | {stage.kind.value} | {decision} | {detail} |")

    selection_stage = session.latest(
        StageKind.FINALIZED, StageKind.PRAGMATIC_APPLIED, StageKind.PRUNED
    )
    if store is not None and selection_stage is not None and "selection" in selection_stage.snapshots:
        rows = store.get(selection_stage.snapshots["selection"])
        retained = [row for row in rows if row["retained"]]
        lines.append("")
        lines.append(f"## Selection ({len(retained)} enablers retained)")
        lines.append("")
        lines.append("| id | name | category | trl | kpi_score | reason |")
        lines.append("| --- | --- | --- | --- | --- | --- |")
        for row in retained:
            lines.append(
                f"| {row['id']} | {row['name']} | {row['category']} | "
                f"{row['trl']} | {row['kpi_score']} | {row['reason']} |"
            )
        removed = [row for row in rows if not row["retained"]]
        if removed:
            lines.append("")
            lines.append(f"## Removed ({len(removed)} enablers)")
            lines.append("")
            lines.append("| id | name | category | trl | kpi_score | reason |")
            lines.append("| --- | --- | --- | --- | --- | --- |")
            for row in removed:
                lines.append(
                    f"| {row['id']} | {row['name']} | {row['category']} | "
                    f"{row['trl']} | {row['kpi_score']} | {row['reason']} |"
                )
    return ("\n".join(lines) + "\n").encode("utf-8")


# ---------------------------------------------------------------------------
# dispatcher

def export(
    target: Any,
    fmt: ExportFormat,
    store: SnapshotStore | None = None,
) -> bytes:
    """Serialize ``target`` in ``fmt``; raises IncompatibleFormat when the
    target's type cannot carry the requested format."""
    fmt = ExportFormat(fmt)
    if fmt in (ExportFormat.GRAPH_JSON, ExportFormat.DOT, ExportFormat.GRAPHML):
        if not isinstance(target, KnowledgeGraph):
            raise IncompatibleFormatError(f"{fmt.value} needs a knowledge graph")
        renderer = {
            ExportFormat.GRAPH_JSON: render_graph_json,
            ExportFormat.DOT: render_dot,
            ExportFormat.GRAPHML: render_graphml,
        }[fmt]
        return renderer(target)
    if fmt is ExportFormat.HISTOGRAM_CSV:
        if not isinstance(target, Histogram):
            raise IncompatibleFormatError("HistogramCsv needs a histogram")
        return render_histogram_csv(target)
    if fmt is ExportFormat.COVERAGE_JSON:
        if not isinstance(target, (CoverageReport, Mapping)):
            raise IncompatibleFormatError("CoverageJson needs a coverage report")
        return render_coverage_json(target)
    if fmt is ExportFormat.SELECTION_CSV:
        if isinstance(target, Session):
            if store is None:
                raise IncompatibleFormatError("SelectionCsv from a session needs its snapshot store")
            stage = target.latest(
                StageKind.FINALIZED, StageKind.PRAGMATIC_APPLIED, StageKind.PRUNED
            )
            if stage is None or "selection" not in stage.snapshots:
                raise IncompatibleFormatError("session has no selection yet")
            return render_selection_csv(store.get(stage.snapshots["selection"]))
        if isinstance(target, Sequence) and not isinstance(target, (str, bytes)):
            return render_selection_csv(target)
        raise IncompatibleFormatError("SelectionCsv needs a session or selection rows")
    if fmt is ExportFormat.SESSION_LOG:
        if not isinstance(target, Session):
            raise IncompatibleFormatError("SessionLog needs a session")
        return render_session_log(target)
    if fmt is ExportFormat.MARKDOWN_SUMMARY:
        if not isinstance(target, Session):
            raise IncompatibleFormatError("MarkdownSummary needs a session")
        return render_markdown_summary(target, store)
    raise IncompatibleFormatError(f"unsupported format {fmt!r}")
