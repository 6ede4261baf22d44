/** Threshold panel: sliders plus the pending what-if preview.

Slider moves trigger stateless what-if calls; the preview shows the
retained/removed delta against the live session. Nothing changes
server-side until the explicit commit button submits a set_thresholds
decision.
*/

import type { ViewState } from "../state.js";
import { kpiRange, legalDecisions, whatIfDelta, TRL_RANGE } from "../state.js";
import { attrs, esc } from "./html.js";

function slider(
  name: string,
  label: string,
  value: number,
  lo: number,
  hi: number,
): string {
  return [
    `<label class="slider-row" for="slider-${name}">`,
    `<span>${esc(label)}</span>`,
    `<input ${attrs({
      id: `slider-${name}`,
      class: "slider",
      type: "range",
      name,
      min: lo,
      max: hi,
      step: 1,
      value,
      "data-value": value,
    })}/>`,
    `<output for="slider-${name}">${esc(value)}</output>`,
    "</label>",
  ].join("");
}

function signed(n: number): string {
  return n > 0 ? `+${n}` : String(n);
}

export function renderThresholds(state: ViewState): string {
  const [kpiLo, kpiHi] = kpiRange(state);
  const delta = whatIfDelta(state);
  const commitLegal = legalDecisions(state.session).has("set_thresholds");

  const preview = delta
    ? [
        `<div ${attrs({
          class: "whatif-preview",
          "data-delta-retained": delta.retained,
          "data-delta-removed": delta.removed,
        })}>`,
        `<span class="delta retained">retained ${esc(signed(delta.retained))}</span>`,
        `<span class="delta removed">removed ${esc(signed(delta.removed))}</span>`,
        `<span class="preview-note">preview only, nothing committed</span>`,
        "</div>",
      ].join("")
    : '<div class="whatif-preview empty">move a slider to preview the effect</div>';

  return [
    '<div class="threshold-pane">',
    slider("trl_min", "Minimum maturity (TRL)", state.sliders.trl_min, TRL_RANGE[0], TRL_RANGE[1]),
    slider("kpi_score_min", "Minimum KPI score", state.sliders.kpi_score_min, kpiLo, kpiHi),
    preview,
    `<button ${attrs({
      class: "commit-thresholds",
      type: "button",
      disabled: !commitLegal,
      title: commitLegal
        ? "Apply these thresholds to the session"
        : "Thresholds can only change before KPI pruning (or via restart)",
    })}>Commit thresholds</button>`,
    "</div>",
  ].join("\n");
}
