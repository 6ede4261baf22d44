import { describe, expect, it } from "vitest";

import {
  initialState,
  kpiRange,
  legalDecisions,
  selectStage,
  setCandidates,
  setHistogram,
  setSession,
  setSliders,
  setWhatIf,
  toggleCandidate,
  whatIfDelta,
  TRL_RANGE,
  type ViewState,
} from "../src/state.js";
import type { Candidate, SessionView, WhatIfResult } from "../src/types.js";

function candidate(id: string, rank: number): Candidate {
  return {
    enabler_id: id,
    gap_categories_addressed: ["Safety"],
    kpi_score: 0,
    trl: 5,
    rank,
  };
}

function sessionAt(
  kind: string,
  overrides: Partial<SessionView> = {},
  info: Record<string, unknown> = {},
): SessionView {
  const stage = { seq: 3, kind, decision: null, snapshots: {}, info };
  return {
    id: "s-test",
    catalog_id: "c".repeat(64),
    status: "InProgress",
    pragmatic_iteration: 0,
    restart_index: 0,
    config: {
      trl_min: 2,
      kpi_score_min: 1,
      keep_migration_critical: true,
      carry_over_ids: [],
      cluster_policy: "KeepAll",
      dependency_policy: "Flag",
      coverage_min: {},
      max_pragmatic_iterations: 3,
      threshold_schedule: [
        [2, 1],
        [2, 0],
      ],
    },
    counts: { nodes: 10, edges: 9, retained: 8, removed: 2 },
    current_stage: stage,
    stages: [
      { seq: 0, kind: "Loaded", decision: null, snapshots: {}, info: {} },
      stage,
    ],
    links: {},
    ...overrides,
  };
}

describe("slider invariants", () => {
  it("clamps trl_min into the engine's accepted range", () => {
    let state = initialState();
    state = setSliders(state, { trl_min: 42 });
    expect(state.sliders.trl_min).toBe(TRL_RANGE[1]);
    state = setSliders(state, { trl_min: -5 });
    expect(state.sliders.trl_min).toBe(TRL_RANGE[0]);
    state = setSliders(state, { trl_min: 6.4 });
    expect(state.sliders.trl_min).toBe(6);
  });

  it("clamps kpi_score_min to the loaded histogram's span", () => {
    let state = initialState();
    state = setHistogram(state, {
      buckets: [
        [-2, 3],
        [0, 4],
        [4, 1],
      ],
      total: 8,
    });
    expect(kpiRange(state)).toEqual([-2, 4]);
    state = setSliders(state, { kpi_score_min: 99 });
    expect(state.sliders.kpi_score_min).toBe(4);
    state = setSliders(state, { kpi_score_min: -99 });
    expect(state.sliders.kpi_score_min).toBe(-2);
  });

  it("falls back to a default span without a histogram", () => {
    const state = initialState();
    expect(kpiRange(state)).toEqual([-10, 10]);
  });

  it("invalidates a pending what-if preview on any slider move", () => {
    let state = initialState();
    state = setWhatIf(state, { outcome: { retained: [], removed: [] } } as unknown as WhatIfResult);
    expect(state.whatIf).not.toBeNull();
    state = setSliders(state, { kpi_score_min: 2 });
    expect(state.whatIf).toBeNull();
  });
});

describe("candidate checklist invariant", () => {
  it("only accepts ids offered by the server", () => {
    let state = initialState();
    state = setCandidates(state, [candidate("a", 1), candidate("b", 2)]);
    state = toggleCandidate(state, "a");
    state = toggleCandidate(state, "ghost");
    expect(state.checklist).toEqual(["a"]);
  });

  it("toggling twice removes the id", () => {
    let state = setCandidates(initialState(), [candidate("a", 1)]);
    state = toggleCandidate(state, "a");
    state = toggleCandidate(state, "a");
    expect(state.checklist).toEqual([]);
  });

  it("prunes the checklist when the server list shrinks", () => {
    let state = setCandidates(initialState(), [candidate("a", 1), candidate("b", 2)]);
    state = toggleCandidate(state, "a");
    state = toggleCandidate(state, "b");
    state = setCandidates(state, [candidate("b", 1)]);
    expect(state.checklist).toEqual(["b"]);
  });
});

describe("session and stage selection", () => {
  it("adopts the session's committed thresholds on load", () => {
    let state = initialState();
    const view = sessionAt("FullKG");
    view.config.trl_min = 4;
    view.config.kpi_score_min = 2;
    state = setSession(state, view);
    expect(state.sliders).toEqual({ trl_min: 4, kpi_score_min: 2 });
    expect(state.selectedStage).toBeNull();
  });

  it("ignores selection of an unknown stage seq", () => {
    let state = setSession(initialState(), sessionAt("FullKG"));
    state = selectStage(state, 99);
    expect(state.selectedStage).toBeNull();
    state = selectStage(state, 0);
    expect(state.selectedStage).toBe(0);
  });
});

describe("what-if delta", () => {
  it("reports the preview's retained/removed shift against the session", () => {
    let state = setSession(initialState(), sessionAt("FullKG"));
    const result = {
      outcome: { retained: ["a", "b", "c"], removed: ["d", "e", "f", "g"] },
    } as unknown as WhatIfResult;
    state = setWhatIf(state, result);
    expect(whatIfDelta(state)).toEqual({ retained: -5, removed: 2 });
  });

  it("is null without both a session and a preview", () => {
    expect(whatIfDelta(initialState())).toBeNull();
  });
});

describe("decision legality mirror", () => {
  it("offers nothing on a closed session", () => {
    const closed = sessionAt("Finalized", { status: "Finalized" });
    expect(legalDecisions(closed).size).toBe(0);
  });

  it("allows threshold changes only before pruning", () => {
    expect(legalDecisions(sessionAt("Clustered")).has("set_thresholds")).toBe(true);
    expect(legalDecisions(sessionAt("Pruned")).has("set_thresholds")).toBe(false);
  });

  it("gates accept/restart/finalize on the coverage outcome", () => {
    const satisfied = legalDecisions(
      sessionAt("CoverageAnalyzed", {}, { satisfied: true, candidates: 0 }),
    );
    expect(satisfied.has("finalize")).toBe(true);
    expect(satisfied.has("accept_candidates")).toBe(false);

    const gapsWithCandidates = legalDecisions(
      sessionAt("CoverageAnalyzed", {}, { satisfied: false, candidates: 3 }),
    );
    expect(gapsWithCandidates.has("accept_candidates")).toBe(true);
    expect(gapsWithCandidates.has("restart")).toBe(false);

    const budgetSpent = legalDecisions(
      sessionAt(
        "CoverageAnalyzed",
        { pragmatic_iteration: 3 },
        { satisfied: false, candidates: 3 },
      ),
    );
    expect(budgetSpent.has("accept_candidates")).toBe(false);
    expect(budgetSpent.has("restart")).toBe(true);

    const noCandidates = legalDecisions(
      sessionAt("CoverageAnalyzed", {}, { satisfied: false, candidates: 0 }),
    );
    expect(noCandidates.has("restart")).toBe(true);
  });
});
