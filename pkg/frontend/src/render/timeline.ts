/** Session timeline pane: the append-only stage history.

Each entry is clickable (data-seq) to point the graph pane at that
stage's snapshot; the decision that produced the stage is shown inline.
*/

import type { SessionView, StageView } from "../types.js";
import { attrs, esc } from "./html.js";

function decisionLabel(stage: StageView): string {
  const decision = stage.decision;
  if (!decision) return "";
  switch (decision.kind) {
    case "accept_candidates":
      return `accepted ${decision.ids.join(", ")}`;
    case "set_thresholds": {
      const parts: string[] = [];
      if (decision.trl_min !== undefined) parts.push(`trl_min=${decision.trl_min}`);
      if (decision.kpi_score_min !== undefined) parts.push(`kpi_score_min=${decision.kpi_score_min}`);
      return `thresholds ${parts.join(" ")}`;
    }
    default:
      return decision.kind;
  }
}

function infoLabel(stage: StageView): string {
  const info = stage.info as Record<string, unknown>;
  const bits: string[] = [];
  if (typeof info.retained === "number") bits.push(`${info.retained} retained`);
  if (typeof info.clusters === "number") bits.push(`${info.clusters} clusters`);
  if (Array.isArray(info.gaps) && info.gaps.length > 0) bits.push(`gaps: ${info.gaps.join(", ")}`);
  if (typeof info.pragmatic_iteration === "number") bits.push(`iteration ${info.pragmatic_iteration}`);
  if (typeof info.restart_index === "number") bits.push(`restart ${info.restart_index}`);
  return bits.join(" · ");
}

export function renderTimeline(session: SessionView, selectedStage: number | null): string {
  const entries = session.stages.map((stage) => {
    const selected = selectedStage === stage.seq;
    const current = stage.seq === session.current_stage.seq;
    const decision = decisionLabel(stage);
    const info = infoLabel(stage);
    return [
      `<li ${attrs({
        class: `timeline-entry${selected ? " selected" : ""}${current ? " current" : ""}`,
        "data-seq": stage.seq,
        "data-kind": stage.kind,
        tabindex: 0,
      })}>`,
      `<span class="timeline-seq">${esc(stage.seq)}</span>`,
      `<span class="timeline-kind">${esc(stage.kind)}</span>`,
      decision ? `<span class="timeline-decision">${esc(decision)}</span>` : "",
      info ? `<span class="timeline-info">${esc(info)}</span>` : "",
      "</li>",
    ].join("");
  });

  return [
    `<div ${attrs({ class: "timeline-pane", "data-status": session.status })}>`,
    `<p class="timeline-status">Status: <strong>${esc(session.status)}</strong></p>`,
    '<ol class="timeline-list">',
    ...entries,
    "</ol>",
    "</div>",
  ].join("\n");
}
