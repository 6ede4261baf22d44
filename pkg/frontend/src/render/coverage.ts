/** Coverage dashboard pane: one bar per KVI category.

Categories whose contributing-cluster count is under the configured
minimum are flagged as gaps (class "gap", data-gap attribute) so the
shortfall stands out.
*/

import type { CoverageReport } from "../types.js";
import { attrs, esc } from "./html.js";

export function renderCoverage(report: CoverageReport): string {
  const categories = Object.keys(report.counts);
  const gapSet = new Set(report.gaps);
  const maxCount = Math.max(1, ...categories.map((c) => report.counts[c] ?? 0));

  const rows = categories.map((category) => {
    const count = report.counts[category] ?? 0;
    const minimum = report.coverage_min[category] ?? 1;
    const isGap = gapSet.has(category);
    const percent = Math.round((count / maxCount) * 100);
    return [
      `<div ${attrs({
        class: `coverage-row${isGap ? " gap" : ""}`,
        "data-category": category,
        "data-count": count,
        "data-min": minimum,
        "data-gap": isGap ? "true" : "false",
      })}>`,
      `<span class="coverage-label">${esc(category)}</span>`,
      `<span class="coverage-track"><span ${attrs({
        class: `coverage-bar${isGap ? " gap" : ""}`,
        style: `width:${percent}%`,
      })}></span></span>`,
      `<span class="coverage-count">${esc(count)} / ${esc(minimum)} min${
        isGap ? ' <strong class="gap-flag">gap</strong>' : ""
      }</span>`,
      "</div>",
    ].join("");
  });

  const status = report.satisfied
    ? '<p class="coverage-status satisfied">All key value categories covered.</p>'
    : `<p class="coverage-status unsatisfied">Gaps: ${report.gaps.map(esc).join(", ")}</p>`;

  return [
    `<div ${attrs({ class: "coverage-pane", "data-satisfied": String(report.satisfied) })}>`,
    ...rows,
    status,
    "</div>",
  ].join("\n");
}
