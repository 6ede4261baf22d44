/** End-to-end smoke: drives a real API server with the bundled worked
 * example and asserts on rendered attributes, exactly as the browser
 * panes would show them. */

import { afterAll, beforeAll, describe, expect, it } from "vitest";
import { spawn, type ChildProcess } from "node:child_process";
import { mkdtempSync, readFileSync, rmSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";

import { StudioApi } from "../src/api.js";
import { forceLayout } from "../src/layout.js";
import { renderCandidates } from "../src/render/candidates.js";
import { renderCoverage } from "../src/render/coverage.js";
import { renderGraph } from "../src/render/graph.js";
import { renderThresholds } from "../src/render/thresholds.js";
import { renderTimeline } from "../src/render/timeline.js";
import {
  initialState,
  setCandidates,
  setSession,
  setSliders,
  setWhatIf,
  toggleCandidate,
  whatIfDelta,
  type ViewState,
} from "../src/state.js";

const PORT = 8912;
const BASE = `http://127.0.0.1:${PORT}`;
const FIXTURE = new URL("../../src/kgselect/data/cobots.json", import.meta.url);

let server: ChildProcess;
let dataDir: string;
const api = new StudioApi(BASE);

async function serverReady(): Promise<void> {
  const deadline = Date.now() + 20_000;
  for (;;) {
    try {
      const response = await fetch(`${BASE}/catalogs`);
      if (response.ok) return;
    } catch {
      // not listening yet
    }
    if (Date.now() > deadline) throw new Error("API server did not come up");
    await new Promise((resolve) => setTimeout(resolve, 250));
  }
}

beforeAll(async () => {
  dataDir = mkdtempSync(join(tmpdir(), "studio-smoke-"));
  server = spawn("kgselect", ["serve", "--addr", `127.0.0.1:${PORT}`, "--data-dir", dataDir], {
    stdio: "ignore",
  });
  await serverReady();
});

afterAll(() => {
  server?.kill();
  if (dataDir) rmSync(dataDir, { recursive: true, force: true });
});

describe("studio against the worked example", () => {
  let state: ViewState = initialState();
  let sessionId = "";

  it("uploads the catalog and opens a session", async () => {
    const uploaded = await api.uploadCatalog(
      JSON.parse(readFileSync(FIXTURE, "utf-8")),
    );
    const created = await api.createSession(uploaded.catalog_id);
    sessionId = created.id;
    state = setSession(state, created);
    expect(created.current_stage.kind).toBe("FullKG");
    expect(created.counts.retained).toBe(123);
  });

  it("walks to coverage analysis", async () => {
    for (const _ of [1, 2, 3, 4]) {
      state = setSession(state, await api.advance(sessionId, { kind: "proceed" }));
    }
    expect(state.session?.current_stage.kind).toBe("CoverageAnalyzed");
  });

  it("highlights Safety as the only gap on the coverage dashboard", async () => {
    const report = await api.coverage(sessionId);
    const html = renderCoverage(report);
    expect(html).toMatch(/data-category="Safety"[^>]*data-gap="true"/);
    expect(html).toContain("Gaps: Safety");
    for (const category of Object.keys(report.counts)) {
      if (category !== "Safety") {
        expect(html).toMatch(new RegExp(`data-category="${category}"[^>]*data-gap="false"`));
      }
    }
  });

  it("lists the safety enabler first in the candidate pane", async () => {
    state = setCandidates(state, await api.candidates(sessionId));
    const html = renderCandidates(state);
    const first = html.indexOf('data-id="pcell-recovery" data-rank="1"');
    expect(first).toBeGreaterThan(-1);
    for (const other of state.candidates.slice(1)) {
      expect(first).toBeLessThan(html.indexOf(`data-id="${other.enabler_id}"`));
    }
  });

  it("previews a kpi-min bump as pure shrinkage without touching the session", async () => {
    const before = await api.getSession(sessionId);
    state = setSliders(state, { kpi_score_min: 2 });
    state = setWhatIf(
      state,
      await api.whatIf(sessionId, { kpi_score_min: state.sliders.kpi_score_min }),
    );
    const delta = whatIfDelta(state);
    expect(delta).not.toBeNull();
    expect(delta!.retained).toBeLessThan(0);
    expect(delta!.removed).toBe(-delta!.retained);
    const html = renderThresholds(state);
    expect(html).toContain(`data-delta-retained="${delta!.retained}"`);
    expect(html).toContain("preview only, nothing committed");

    const after = await api.getSession(sessionId);
    expect(after.current_stage.seq).toBe(before.current_stage.seq);
    expect(after.counts).toEqual(before.counts);
  });

  it("accepting the top candidate adds a PragmaticApplied timeline entry", async () => {
    state = setCandidates(state, await api.candidates(sessionId));
    state = toggleCandidate(state, "pcell-recovery");
    expect(state.checklist).toEqual(["pcell-recovery"]);

    state = setSession(
      state,
      await api.advance(sessionId, { kind: "accept_candidates", ids: [...state.checklist] }),
    );
    const html = renderTimeline(state.session!, null);
    expect(html).toMatch(/data-kind="PragmaticApplied"/);
    expect(html).toContain("accepted pcell-recovery");
    expect(state.session?.counts.retained).toBe(82);
  });

  it("coverage turns satisfied after the re-introduction", async () => {
    state = setSession(state, await api.advance(sessionId, { kind: "proceed" }));
    const report = await api.coverage(sessionId);
    expect(report.satisfied).toBe(true);
    expect(report.counts.Safety).toBeGreaterThanOrEqual(1);
    const html = renderCoverage(report);
    expect(html).toContain('data-satisfied="true"');
    expect(html).not.toContain('data-gap="true"');
  });

  it("renders the graph with the fixed color scheme", async () => {
    const graph = await api.graph(sessionId);
    const reasons = await api.selectionReasons(sessionId);
    const svg = renderGraph(graph, forceLayout(graph), { reasons });

    expect(svg).toMatch(/<circle[^>]*class="node enabler"[^>]*fill="blue"/);
    expect(svg).toMatch(/<circle[^>]*class="node enabler"[^>]*fill="orange"/);
    expect(svg).toMatch(/<rect[^>]*class="node principle"[^>]*fill="green"/);
    expect(svg).toMatch(/<line[^>]*stroke="green"[^>]*data-kind="fulfills"/);
    expect(svg).toMatch(/<line[^>]*stroke="red"[^>]*data-kind="dependency"/);
    expect(svg).toMatch(/<title>pcell-recovery trl=6 kpi_score=0 reason=pragmatic re-introduction<\/title>/);
  });

  it("finalizes and the timeline shows the closed session", async () => {
    state = setSession(state, await api.advance(sessionId, { kind: "finalize" }));
    const html = renderTimeline(state.session!, null);
    expect(html).toContain("Status: <strong>Finalized</strong>");
    expect(html).toMatch(/data-kind="Finalized"/);
    expect(state.session?.counts.retained).toBe(82);
  });
});
