/** Graph explorer pane: an SVG of the knowledge graph.

Node and edge colors come from the server document untouched (blue and
orange enabler bubbles, green principle boxes, green fulfillment and red
dependency links). The tooltip carries trl, kpi_score, and the pruning
reason when one is known.
*/

import type { GraphDoc } from "../types.js";
import type { Point } from "../layout.js";
import { attrs, esc } from "./html.js";

export interface GraphRenderOptions {
  width: number;
  height: number;
  selected: string | null;
  /** Per-enabler pruning reason, keyed by id (fetched, e.g. from a
   * what-if outcome); omitted entries simply have no reason line. */
  reasons: Record<string, string>;
}

const DEFAULTS: GraphRenderOptions = {
  width: 900,
  height: 600,
  selected: null,
  reasons: {},
};

export function renderGraph(
  doc: GraphDoc,
  layout: Map<string, Point>,
  options: Partial<GraphRenderOptions> = {},
): string {
  const opts = { ...DEFAULTS, ...options };
  const parts: string[] = [
    `<svg ${attrs({
      class: "graph-pane",
      viewBox: `0 0 ${opts.width} ${opts.height}`,
      xmlns: "http://www.w3.org/2000/svg",
      role: "img",
    })}>`,
  ];

  parts.push('<g class="edges">');
  for (const edge of doc.edges) {
    const source = layout.get(edge.source);
    const target = layout.get(edge.target);
    if (!source || !target) continue;
    parts.push(
      `<line ${attrs({
        class: `edge ${edge.kind}`,
        x1: source.x,
        y1: source.y,
        x2: target.x,
        y2: target.y,
        stroke: edge.color,
        "stroke-width": edge.kind === "fulfills" ? 1.6 : 1.1,
        "data-kind": edge.kind,
        "data-weight": edge.weight,
      })}/>`,
    );
  }
  parts.push("</g>");

  parts.push('<g class="nodes">');
  for (const node of doc.nodes) {
    const p = layout.get(node.id);
    if (!p) continue;
    const selected = node.id === opts.selected;
    const tooltip = [
      node.id,
      node.trl === null ? null : `trl=${node.trl}`,
      node.kind === "enabler" ? `kpi_score=${node.kpi_score}` : null,
      opts.reasons[node.id] ? `reason=${opts.reasons[node.id]}` : null,
    ]
      .filter((line): line is string => line !== null)
      .join(" ");
    const common = {
      class: `node ${node.kind}${selected ? " selected" : ""}`,
      fill: node.color,
      "data-id": node.id,
      "data-kind": node.kind,
      tabindex: 0,
    };
    if (node.kind === "principle") {
      const size = 16;
      parts.push(
        `<rect ${attrs({
          ...common,
          x: p.x - size / 2,
          y: p.y - size / 2,
          width: size,
          height: size,
        })}><title>${esc(tooltip)}</title></rect>`,
      );
    } else {
      parts.push(
        `<circle ${attrs({
          ...common,
          cx: p.x,
          cy: p.y,
          r: 5 + 2 * node.node_weight,
        })}><title>${esc(tooltip)}</title></circle>`,
      );
    }
  }
  parts.push("</g>");

  parts.push("</svg>");
  return parts.join("\n");
}
