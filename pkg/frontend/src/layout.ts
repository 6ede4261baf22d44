/** Deterministic force-directed layout.

Plain spring embedder: seeded initial placement on a circle, then a
fixed number of repulsion/attraction/centering steps. Same graph in,
same coordinates out, so rendered views are reproducible and testable.
*/

import type { GraphDoc } from "./types.js";

export interface Point {
  x: number;
  y: number;
}

export interface LayoutOptions {
  width: number;
  height: number;
  iterations: number;
  seed: number;
}

export const LAYOUT_DEFAULTS: LayoutOptions = {
  width: 900,
  height: 600,
  iterations: 120,
  seed: 1,
};

/** mulberry32: tiny deterministic PRNG, plenty for jittering a layout. */
function rng(seed: number): () => number {
  let a = seed >>> 0;
  return () => {
    a = (a + 0x6d2b79f5) >>> 0;
    let t = a;
    t = Math.imul(t ^ (t >>> 15), t | 1);
    t ^= t + Math.imul(t ^ (t >>> 7), t | 61);
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  };
}

export function forceLayout(
  doc: GraphDoc,
  options: Partial<LayoutOptions> = {},
): Map<string, Point> {
  const opts = { ...LAYOUT_DEFAULTS, ...options };
  const ids = doc.nodes.map((n) => n.id);
  const positions = new Map<string, Point>();
  if (ids.length === 0) return positions;

  const random = rng(opts.seed);
  const cx = opts.width / 2;
  const cy = opts.height / 2;
  const radius = Math.min(opts.width, opts.height) * 0.38;
  ids.forEach((id, i) => {
    const angle = (2 * Math.PI * i) / ids.length;
    positions.set(id, {
      x: cx + radius * Math.cos(angle) + (random() - 0.5) * 20,
      y: cy + radius * Math.sin(angle) + (random() - 0.5) * 20,
    });
  });

  const area = opts.width * opts.height;
  const k = Math.sqrt(area / ids.length); // ideal pairwise distance
  const edges = doc.edges
    .filter((e) => positions.has(e.source) && positions.has(e.target))
    .map((e) => [e.source, e.target] as const);

  for (let step = 0; step < opts.iterations; step++) {
    const temperature = (opts.width / 10) * (1 - step / opts.iterations) + 1;
    const disp = new Map<string, Point>(ids.map((id) => [id, { x: 0, y: 0 }]));

    for (let i = 0; i < ids.length; i++) {
      const a = ids[i]!;
      const pa = positions.get(a)!;
      const da = disp.get(a)!;
      for (let j = i + 1; j < ids.length; j++) {
        const b = ids[j]!;
        const pb = positions.get(b)!;
        let dx = pa.x - pb.x;
        let dy = pa.y - pb.y;
        let dist = Math.hypot(dx, dy);
        if (dist < 0.01) {
          dx = random() - 0.5;
          dy = random() - 0.5;
          dist = Math.hypot(dx, dy);
        }
        const force = (k * k) / dist / dist;
        const db = disp.get(b)!;
        da.x += dx * force;
        da.y += dy * force;
        db.x -= dx * force;
        db.y -= dy * force;
      }
    }

    for (const [source, target] of edges) {
      const ps = positions.get(source)!;
      const pt = positions.get(target)!;
      const dx = ps.x - pt.x;
      const dy = ps.y - pt.y;
      const dist = Math.max(Math.hypot(dx, dy), 0.01);
      const force = (dist * dist) / k / dist;
      const ds = disp.get(source)!;
      const dt = disp.get(target)!;
      ds.x -= dx * force;
      ds.y -= dy * force;
      dt.x += dx * force;
      dt.y += dy * force;
    }

    for (const id of ids) {
      const p = positions.get(id)!;
      const d = disp.get(id)!;
      // gentle pull to the centre keeps disconnected pieces on canvas
      d.x += (cx - p.x) * 0.02;
      d.y += (cy - p.y) * 0.02;
      const magnitude = Math.max(Math.hypot(d.x, d.y), 0.01);
      const step_ = Math.min(magnitude, temperature);
      p.x += (d.x / magnitude) * step_;
      p.y += (d.y / magnitude) * step_;
      p.x = Math.min(opts.width - 20, Math.max(20, p.x));
      p.y = Math.min(opts.height - 20, Math.max(20, p.y));
    }
  }

  for (const p of positions.values()) {
    p.x = Math.round(p.x * 100) / 100;
    p.y = Math.round(p.y * 100) / 100;
  }
  return positions;
}
