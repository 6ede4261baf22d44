"""Command-line frontend: validation, one-shot pruning, batch runs, serving.

Exit codes: 0 success, 1 validation or runtime failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import uuid
from pathlib import Path
from typing import Any, Mapping, Sequence

from .catalog import (
    Catalog,
    load_catalog_path,
    validate_catalog,
    violations_to_jsonable,
)
from .errors import KgSelectError, NotFoundError, SchemaError
from .graph import build_full_kg, graph_from_jsonable
from .persist import SessionStore
from .pipeline import StageKind, evaluate_once, replay_events, run_batch
from .pruning import PruneConfig, selection_rows
from .reports import (
    ExportFormat,
    export,
    render_coverage_json,
    render_graph_json,
    render_histogram_csv,
    render_selection_csv,
)
from .scoring import histogram_from_jsonable

logger = logging.getLogger(__name__)


def _print_table(headers: Sequence[str], rows: Sequence[Sequence[Any]], out=None) -> None:
    out = out or sys.stdout
    cells = [[str(c) for c in row] for row in rows]
    widths = [len(h) for h in headers]
    for row in cells:
        for i, cell in enumerate(row):
            widths[i] = max(widths[i], len(cell))
    line = "  ".join(h.ljust(w) for h, w in zip(headers, widths))
    print(line, file=out)
    print("  ".join("-" * w for w in widths), file=out)
    for row in cells:
        print("  ".join(cell.ljust(w) for cell, w in zip(row, widths)), file=out)


def _read_config(args: argparse.Namespace) -> PruneConfig:
    """Config file first, then flag overrides on top."""
    overrides: dict[str, Any] = {}
    config_path = getattr(args, "config", None)
    if config_path:
        try:
            doc = json.loads(Path(config_path).read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            raise SchemaError(f"config file {config_path}: malformed JSON: {exc}") from exc
        if not isinstance(doc, Mapping):
            raise SchemaError(f"config file {config_path}: must be a JSON object")
        overrides.update(doc)
    if getattr(args, "trl_min", None) is not None:
        overrides["trl_min"] = args.trl_min
    if getattr(args, "kpi_min", None) is not None:
        overrides["kpi_score_min"] = args.kpi_min
    if getattr(args, "dep_policy", None) is not None:
        overrides["dependency_policy"] = args.dep_policy
    if getattr(args, "cluster_policy", None) is not None:
        overrides["cluster_policy"] = args.cluster_policy
    if getattr(args, "carry_over", None):
        ids = [
            line.strip()
            for line in Path(args.carry_over).read_text(encoding="utf-8").splitlines()
            if line.strip() and not line.strip().startswith("#")
        ]
        overrides["carry_over_ids"] = ids
    return PruneConfig().with_overrides(overrides)


def _load(path: str, validate: bool = True) -> Catalog:
    try:
        return load_catalog_path(path, validate=validate)
    except FileNotFoundError:
        raise NotFoundError(f"no catalog at '{path}'") from None


# ---------------------------------------------------------------------------
# subcommands

def cmd_validate(args: argparse.Namespace) -> int:
    catalog = _load(args.catalog, validate=False)
    violations = validate_catalog(catalog)
    if args.json:
        print(json.dumps(violations_to_jsonable(violations), indent=2))
    else:
        print(f"{len(violations)} violations")
        if violations:
            _print_table(
                ["entity", "id", "field", "message"],
                [[v.entity_kind, v.entity_id, v.field, v.message] for v in violations],
            )
    return 1 if violations else 0


def cmd_build(args: argparse.Namespace) -> int:
    catalog = _load(args.catalog)
    graph = build_full_kg(catalog)
    data = render_graph_json(graph)
    if args.output:
        Path(args.output).write_bytes(data)
        print(f"wrote {args.output} ({len(graph.nodes)} nodes, {len(graph.edges)} edges)")
    else:
        sys.stdout.write(data.decode("utf-8"))
    return 0


def cmd_prune(args: argparse.Namespace) -> int:
    catalog = _load(args.catalog)
    cfg = _read_config(args)
    result = evaluate_once(build_full_kg(catalog), catalog, cfg)
    rows = selection_rows(result.outcome, catalog)
    if args.output:
        Path(args.output).write_bytes(render_selection_csv(rows))
        print(f"wrote {args.output} ({len(result.outcome.retained_ids)} retained)")
    else:
        _print_table(
            ["id", "name", "category", "trl", "kpi_score", "retained", "reason"],
            [
                [r["id"], r["name"], r["category"], r["trl"], r["kpi_score"],
                 "yes" if r["retained"] else "no", r["reason"]]
                for r in rows
            ],
        )
    if result.outcome.dependency_violations:
        print(f"{len(result.outcome.dependency_violations)} dependency violation(s):", file=sys.stderr)
        for kept, missing in result.outcome.dependency_violations:
            print(f"  {kept} depends on pruned {missing}", file=sys.stderr)
    return 0


def cmd_analyze(args: argparse.Namespace) -> int:
    catalog = _load(args.catalog)
    cfg = _read_config(args)
    result = evaluate_once(build_full_kg(catalog), catalog, cfg)
    if args.out_dir:
        out = Path(args.out_dir)
        out.mkdir(parents=True, exist_ok=True)
        (out / "histogram.csv").write_bytes(render_histogram_csv(result.histogram))
        (out / "coverage.json").write_bytes(render_coverage_json(result.coverage))
        print(f"wrote {out / 'histogram.csv'} and {out / 'coverage.json'}")
        return 0
    print("KPI-score histogram (after prioritization):")
    _print_table(
        ["kpi_score", "count"],
        [[s, result.histogram.buckets[s]] for s in sorted(result.histogram.buckets)],
    )
    print()
    print("KVI category coverage (after pruning):")
    doc = result.coverage.to_jsonable()
    _print_table(
        ["category", "count", "min", "gap"],
        [
            [cat, doc["counts"][cat], doc["coverage_min"][cat],
             "GAP" if cat in doc["gaps"] else ""]
            for cat in sorted(doc["counts"])
        ],
    )
    if result.candidates:
        print()
        print("Pragmatic re-introduction candidates:")
        _print_table(
            ["rank", "id", "gaps addressed", "kpi_score", "trl"],
            [
                [c.rank, c.enabler_id, ", ".join(sorted(g.value for g in c.gap_categories_addressed)),
                 c.kpi_score, c.trl]
                for c in result.candidates
            ],
        )
    return 0


def cmd_run(args: argparse.Namespace) -> int:
    catalog = _load(args.catalog)
    cfg = _read_config(args)
    out = Path(args.out_dir)
    store = SessionStore(out)
    store.save_catalog(catalog)
    session_id = args.session_id or f"s-{uuid.uuid4().hex[:12]}"
    session = run_batch(
        catalog,
        cfg,
        store.snapshots,
        session_id=session_id,
        on_event=lambda event: store.append_event(session_id, event),
    )

    exports = out / "exports"
    exports.mkdir(exist_ok=True)
    (exports / "session.jsonl").write_bytes(store.read_log_bytes(session.id))
    (exports / "summary.md").write_bytes(
        export(session, ExportFormat.MARKDOWN_SUMMARY, store.snapshots)
    )
    stage = session.latest(StageKind.FINALIZED, StageKind.PRAGMATIC_APPLIED, StageKind.PRUNED)
    if stage is not None and "selection" in stage.snapshots:
        (exports / "selection.csv").write_bytes(
            export(session, ExportFormat.SELECTION_CSV, store.snapshots)
        )
    hist_stage = session.latest(StageKind.RESTARTED, StageKind.PRIORITIZED)
    if hist_stage is not None and "histogram" in hist_stage.snapshots:
        histogram = histogram_from_jsonable(store.snapshots.get(hist_stage.snapshots["histogram"]))
        (exports / "histogram.csv").write_bytes(render_histogram_csv(histogram))
    cov_stage = session.latest(StageKind.FINALIZED, StageKind.COVERAGE_ANALYZED)
    if cov_stage is not None and "coverage" in cov_stage.snapshots:
        (exports / "coverage.json").write_bytes(
            render_coverage_json(store.snapshots.get(cov_stage.snapshots["coverage"]))
        )
    full_stage = session.latest(StageKind.FULL_KG)
    if full_stage is not None:
        (exports / "graph.json").write_bytes(
            render_graph_json(graph_from_jsonable(store.snapshots.get(full_stage.snapshots["graph"])))
        )

    retained = ""
    if stage is not None:
        retained = f", {stage.info.get('retained', '?')} retained"
    print(f"session {session.id}: {session.status.value} after {len(session.stages)} stages{retained}")
    print(f"session dir: {out}")
    return 0


def cmd_export(args: argparse.Namespace) -> int:
    root = Path(args.session_dir)
    if not root.exists():
        raise NotFoundError(f"no session directory at '{root}'")
    store = SessionStore(root)
    session_ids = store.list_sessions()
    if args.session_id:
        if args.session_id not in session_ids:
            raise NotFoundError(f"no session '{args.session_id}' under '{root}'")
        session_id = args.session_id
    elif len(session_ids) == 1:
        session_id = session_ids[0]
    elif not session_ids:
        raise NotFoundError(f"no sessions under '{root}'")
    else:
        raise SchemaError(
            f"multiple sessions under '{root}'; pick one with --session-id "
            f"({', '.join(session_ids)})"
        )
    session = replay_events(store.read_events(session_id), store.load_catalog, store.snapshots)
    try:
        fmt = ExportFormat(args.fmt)
    except ValueError:
        allowed = ", ".join(f.value for f in ExportFormat)
        raise SchemaError(f"unknown format '{args.fmt}'; expected one of [{allowed}]") from None

    if fmt in (ExportFormat.GRAPH_JSON, ExportFormat.DOT, ExportFormat.GRAPHML):
        for record in reversed(session.stages):
            if "outcome" in record.snapshots:
                doc = store.snapshots.get(record.snapshots["outcome"])["graph"]
                break
            if "graph" in record.snapshots:
                doc = store.snapshots.get(record.snapshots["graph"])
                break
        else:
            raise NotFoundError("session has no graph to export")
        data = export(graph_from_jsonable(doc), fmt)
    elif fmt is ExportFormat.HISTOGRAM_CSV:
        stage = session.latest(StageKind.RESTARTED, StageKind.PRIORITIZED)
        if stage is None:
            raise NotFoundError("session has no histogram yet")
        doc = store.snapshots.get(stage.snapshots["histogram"])
        data = render_histogram_csv(histogram_from_jsonable(doc))
    elif fmt is ExportFormat.COVERAGE_JSON:
        stage = session.latest(StageKind.FINALIZED, StageKind.COVERAGE_ANALYZED)
        if stage is None or "coverage" not in stage.snapshots:
            raise NotFoundError("session has no coverage report yet")
        data = render_coverage_json(store.snapshots.get(stage.snapshots["coverage"]))
    elif fmt is ExportFormat.SESSION_LOG:
        data = store.read_log_bytes(session_id)
    else:
        data = export(session, fmt, store.snapshots)

    if args.output:
        Path(args.output).write_bytes(data)
        print(f"wrote {args.output}")
    else:
        sys.stdout.write(data.decode("utf-8"))
    return 0


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .server import create_app

    host, _, port = args.addr.rpartition(":")
    host = host or "127.0.0.1"
    if not port.isdigit():
        print(f"error: --addr must look like host:port, got '{args.addr}'", file=sys.stderr)
        return 2
    app = create_app(args.data_dir)
    uvicorn.run(app, host=host, port=int(port), log_level="info")
    return 0


# ---------------------------------------------------------------------------
# parser

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kgselect",
        description="Knowledge-graph based enabler selection for 6G use cases.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a catalog and list violations")
    p.add_argument("catalog", help="catalog path (.json, .zip bundle, or directory)")
    p.add_argument("--json", action="store_true", help="emit violations as JSON")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("build", help="build the full knowledge graph")
    p.add_argument("catalog")
    p.add_argument("-o", "--output", help="write GraphJson here instead of stdout")
    p.set_defaults(func=cmd_build)

    def add_config_flags(p: argparse.ArgumentParser) -> None:
        p.add_argument("--config", help="JSON config file mirroring the engine settings")
        p.add_argument("--trl-min", type=int, help="maturity threshold override")
        p.add_argument("--kpi-min", type=int, help="KPI-score threshold override")
        p.add_argument("--carry-over", help="file with one enabler id per line to always keep")
        p.add_argument(
            "--dep-policy",
            choices=["Flag", "ReaddClosure", "DropDependents"],
            help="what to do about pruned dependencies",
        )
        p.add_argument(
            "--cluster-policy",
            choices=["KeepAll", "BestPerCluster"],
            help="per-category selection policy",
        )

    p = sub.add_parser("prune", help="one-shot prioritize + cluster + prune")
    p.add_argument("catalog")
    add_config_flags(p)
    p.add_argument("-o", "--output", help="write SelectionCsv here instead of a table")
    p.set_defaults(func=cmd_prune)

    p = sub.add_parser("analyze", help="histogram and KVI coverage for a catalog")
    p.add_argument("catalog")
    add_config_flags(p)
    p.add_argument("--out-dir", help="write histogram.csv and coverage.json here")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("run", help="run the full batch pipeline, writing a session dir")
    p.add_argument("catalog")
    add_config_flags(p)
    p.add_argument("--out-dir", required=True, help="session directory to create")
    p.add_argument("--session-id", help="fixed session id (default: random)")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("export", help="re-render an artifact from a session dir")
    p.add_argument("session_dir")
    p.add_argument("--fmt", required=True, help="export format name")
    p.add_argument("--session-id", help="session id when the dir holds several")
    p.add_argument("-o", "--output", help="write here instead of stdout")
    p.set_defaults(func=cmd_export)

    p = sub.add_parser("serve", help="serve the HTTP API")
    p.add_argument("--addr", default="127.0.0.1:8000", help="listen address host:port")
    p.add_argument("--data-dir", required=True, help="persistence directory")
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except KgSelectError as exc:
        print(f"error [{exc.code}]: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
