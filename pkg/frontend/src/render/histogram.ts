/** KPI score histogram pane.

Bars straight from the server's bucket list; the only adornment is a
"below" class on buckets under the current KPI threshold so the cut
line is visible.
*/

import type { Histogram } from "../types.js";
import { attrs, esc } from "./html.js";

export interface HistogramRenderOptions {
  width: number;
  height: number;
  kpiMin: number | null;
}

const DEFAULTS: HistogramRenderOptions = { width: 520, height: 220, kpiMin: null };

export function renderHistogram(
  histogram: Histogram,
  options: Partial<HistogramRenderOptions> = {},
): string {
  const opts = { ...DEFAULTS, ...options };
  const buckets = histogram.buckets;
  const maxCount = Math.max(1, ...buckets.map(([, count]) => count));
  const margin = 24;
  const plotWidth = opts.width - 2 * margin;
  const plotHeight = opts.height - 2 * margin;
  const barWidth = buckets.length > 0 ? plotWidth / buckets.length : plotWidth;

  const parts: string[] = [
    `<svg ${attrs({
      class: "histogram-pane",
      viewBox: `0 0 ${opts.width} ${opts.height}`,
      xmlns: "http://www.w3.org/2000/svg",
      role: "img",
      "data-total": histogram.total,
    })}>`,
  ];

  buckets.forEach(([score, count], index) => {
    const h = (count / maxCount) * plotHeight;
    const x = margin + index * barWidth;
    const y = margin + plotHeight - h;
    const below = opts.kpiMin !== null && score < opts.kpiMin;
    parts.push(
      `<rect ${attrs({
        class: `bucket${below ? " below" : ""}`,
        x: Math.round(x * 100) / 100,
        y: Math.round(y * 100) / 100,
        width: Math.round(barWidth * 0.82 * 100) / 100,
        height: Math.round(h * 100) / 100,
        "data-score": score,
        "data-count": count,
      })}><title>${esc(`score ${score}: ${count} enablers`)}</title></rect>`,
    );
    parts.push(
      `<text ${attrs({
        class: "bucket-label",
        x: Math.round((x + barWidth * 0.41) * 100) / 100,
        y: opts.height - 6,
        "text-anchor": "middle",
      })}>${esc(score)}</text>`,
    );
  });

  parts.push("</svg>");
  return parts.join("\n");
}
