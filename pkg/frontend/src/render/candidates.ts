/** Candidate review pane: server-ranked re-introduction candidates with
 * accept checkboxes. The accept button submits exactly the ticked subset. */

import type { ViewState } from "../state.js";
import { legalDecisions } from "../state.js";
import { attrs, esc } from "./html.js";

export function renderCandidates(state: ViewState): string {
  const acceptLegal = legalDecisions(state.session).has("accept_candidates");
  if (state.candidates.length === 0) {
    return [
      '<div class="candidate-pane empty">',
      "<p>No discarded enabler addresses an open gap.</p>",
      "</div>",
    ].join("\n");
  }

  const checklist = new Set(state.checklist);
  const rows = state.candidates.map((candidate) => {
    const checked = checklist.has(candidate.enabler_id);
    return [
      `<li ${attrs({
        class: "candidate-row",
        "data-id": candidate.enabler_id,
        "data-rank": candidate.rank,
      })}>`,
      `<input ${attrs({
        type: "checkbox",
        class: "candidate-tick",
        "data-id": candidate.enabler_id,
        checked,
        disabled: !acceptLegal,
      })}/>`,
      `<span class="candidate-rank">#${esc(candidate.rank)}</span>`,
      `<span class="candidate-id">${esc(candidate.enabler_id)}</span>`,
      `<span class="candidate-gaps">closes ${candidate.gap_categories_addressed
        .map(esc)
        .join(", ")}</span>`,
      `<span class="candidate-meta">kpi ${esc(candidate.kpi_score)}, trl ${esc(candidate.trl)}</span>`,
      "</li>",
    ].join("");
  });

  return [
    '<div class="candidate-pane">',
    '<ol class="candidate-list">',
    ...rows,
    "</ol>",
    `<button ${attrs({
      class: "accept-candidates",
      type: "button",
      disabled: !acceptLegal || state.checklist.length === 0,
      "data-count": state.checklist.length,
    })}>Accept ${esc(state.checklist.length)} selected</button>`,
    "</div>",
  ].join("\n");
}
