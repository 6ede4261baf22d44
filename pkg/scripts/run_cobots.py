"""Walk the bundled cooperating-mobile-robots catalog through the pipeline.

Runs the automatic decision loop end to end, narrating each stage, then
prints the score histogram, the coverage table, and the final selection.
With --out-dir the usual export bundle is written as well.
"""

from __future__ import annotations

import argparse
import logging
import sys
from collections import Counter

from kgselect.catalog import KviCategory
from kgselect.fixtures import load_cobots
from kgselect.persist import SessionStore, SnapshotStore
from kgselect.pipeline import StageKind, run_batch
from kgselect.pruning import PruneConfig, outcome_from_jsonable
from kgselect.reports import ExportFormat, export
from kgselect.scoring import histogram_from_jsonable

logger = logging.getLogger(__name__)


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--trl-min", type=int, default=None, help="maturity threshold override")
    parser.add_argument("--kpi-min", type=int, default=None, help="KPI score threshold override")
    parser.add_argument("--out-dir", default=None, help="write the export bundle here")
    parser.add_argument("-v", "--verbose", action="store_true")
    args = parser.parse_args(argv)

    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)

    overrides = {}
    if args.trl_min is not None:
        overrides["trl_min"] = args.trl_min
    if args.kpi_min is not None:
        overrides["kpi_score_min"] = args.kpi_min
    cfg = PruneConfig().with_overrides(overrides)

    catalog = load_cobots()
    store = SessionStore(args.out_dir) if args.out_dir else None
    snapshots = store.snapshots if store is not None else SnapshotStore()
    if store is not None:
        store.save_catalog(catalog)

    def narrate(event):
        if event["event"] == "stage":
            detail = {k: v for k, v in event["info"].items() if k != "catalog_digest"}
            print(f"  [{event['seq']:>2}] {event['kind']:<18} {detail}")

    session = run_batch(catalog, cfg, snapshots, on_event=narrate)

    print(f"\nstatus: {session.status.value}  "
          f"iterations: {session.pragmatic_iteration}  "
          f"restarts: {session.restart_index}")

    hist_stage = session.latest(StageKind.RESTARTED, StageKind.PRIORITIZED)
    if hist_stage is not None:
        hist = histogram_from_jsonable(snapshots.get(hist_stage.snapshots["histogram"]))
        print("\nKPI score histogram after prioritization:")
        for score in sorted(hist.buckets):
            print(f"  {score:>3}: {'#' * hist.count(score)} ({hist.count(score)})")

    cov_stage = session.latest(StageKind.FINALIZED, StageKind.COVERAGE_ANALYZED)
    if cov_stage is not None:
        report = snapshots.get(cov_stage.snapshots["coverage"])
        print("\nKVI coverage (contributing clusters per category):")
        for category in KviCategory:
            count = report["counts"][category.value]
            marker = " <- gap" if category.value in report["gaps"] else ""
            print(f"  {category.value:<34} {count}{marker}")

    sel_stage = session.latest(
        StageKind.FINALIZED, StageKind.PRAGMATIC_APPLIED, StageKind.PRUNED
    )
    if sel_stage is not None:
        outcome = outcome_from_jsonable(snapshots.get(sel_stage.snapshots["outcome"]))
        by_reason = Counter(outcome.reasons[i] for i in outcome.retained_ids)
        print(f"\nfinal selection: {len(outcome.retained_ids)} enablers retained, "
              f"{len(outcome.removed_ids)} removed")
        for reason, n in sorted(by_reason.items()):
            print(f"  retained via {reason}: {n}")
        if outcome.dependency_violations:
            print("  flagged dependency pairs:")
            for kept, missing in outcome.dependency_violations:
                print(f"    {kept} -> {missing}")

    if store is not None:
        out = store.root / "exports"
        out.mkdir(parents=True, exist_ok=True)
        (out / "summary.md").write_bytes(export(session, ExportFormat.MARKDOWN_SUMMARY, snapshots))
        (out / "selection.csv").write_bytes(export(session, ExportFormat.SELECTION_CSV, snapshots))
        print(f"\nexports written under {out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
