/** View state for the studio.

Two invariants are enforced here rather than trusted to callers:
threshold slider values stay inside the engine's accepted ranges, and
the candidate checklist is always a subset of the server-provided
candidate list. Everything else in the state is a verbatim server
document; the UI renders fetched truth and never recomputes it.
*/

import type { Candidate, Histogram, SessionView, WhatIfResult } from "./types.js";

export const TRL_RANGE: readonly [number, number] = [1, 9];

/** Fallback KPI slider span when no histogram is loaded yet. */
export const KPI_RANGE_DEFAULT: readonly [number, number] = [-10, 10];

export interface Thresholds {
  trl_min: number;
  kpi_score_min: number;
}

export interface ViewState {
  session: SessionView | null;
  /** Stage seq whose snapshot the graph pane shows; null = current. */
  selectedStage: number | null;
  sliders: Thresholds;
  selectedNode: string | null;
  /** Candidate ids ticked for acceptance; subset of `candidates`. */
  checklist: string[];
  candidates: Candidate[];
  /** Last uncommitted what-if response, if any. */
  whatIf: WhatIfResult | null;
  histogram: Histogram | null;
}

export function initialState(): ViewState {
  return {
    session: null,
    selectedStage: null,
    sliders: { trl_min: 2, kpi_score_min: 1 },
    selectedNode: null,
    checklist: [],
    candidates: [],
    whatIf: null,
    histogram: null,
  };
}

function clamp(value: number, lo: number, hi: number): number {
  return Math.min(hi, Math.max(lo, Math.round(value)));
}

/** KPI slider bounds: the loaded histogram's score span, else a default. */
export function kpiRange(state: ViewState): readonly [number, number] {
  const buckets = state.histogram?.buckets ?? [];
  if (buckets.length === 0) return KPI_RANGE_DEFAULT;
  const scores = buckets.map(([score]) => score);
  return [Math.min(...scores, 0), Math.max(...scores, 1)];
}

export function setSliders(state: ViewState, next: Partial<Thresholds>): ViewState {
  const [kpiLo, kpiHi] = kpiRange(state);
  const sliders: Thresholds = {
    trl_min: clamp(next.trl_min ?? state.sliders.trl_min, TRL_RANGE[0], TRL_RANGE[1]),
    kpi_score_min: clamp(next.kpi_score_min ?? state.sliders.kpi_score_min, kpiLo, kpiHi),
  };
  // a slider move invalidates any previously fetched preview
  return { ...state, sliders, whatIf: null };
}

export function setSession(state: ViewState, session: SessionView): ViewState {
  return {
    ...state,
    session,
    selectedStage: null,
    sliders: {
      trl_min: session.config.trl_min,
      kpi_score_min: session.config.kpi_score_min,
    },
    whatIf: null,
  };
}

export function setCandidates(state: ViewState, candidates: Candidate[]): ViewState {
  const ids = new Set(candidates.map((c) => c.enabler_id));
  return {
    ...state,
    candidates,
    checklist: state.checklist.filter((id) => ids.has(id)),
  };
}

export function toggleCandidate(state: ViewState, id: string): ViewState {
  if (state.checklist.includes(id)) {
    return { ...state, checklist: state.checklist.filter((c) => c !== id) };
  }
  if (!state.candidates.some((c) => c.enabler_id === id)) {
    return state; // not offered by the server: never enters the checklist
  }
  return { ...state, checklist: [...state.checklist, id] };
}

export function setWhatIf(state: ViewState, result: WhatIfResult): ViewState {
  return { ...state, whatIf: result };
}

export function setHistogram(state: ViewState, histogram: Histogram): ViewState {
  return { ...state, histogram };
}

export function selectStage(state: ViewState, seq: number | null): ViewState {
  if (seq !== null) {
    const known = state.session?.stages.some((s) => s.seq === seq) ?? false;
    if (!known) return state;
  }
  return { ...state, selectedStage: seq };
}

export function selectNode(state: ViewState, id: string | null): ViewState {
  return { ...state, selectedNode: id };
}

/** Retained/removed delta of a preview against the live session counts. */
export function whatIfDelta(state: ViewState): { retained: number; removed: number } | null {
  if (!state.session || !state.whatIf) return null;
  return {
    retained: state.whatIf.outcome.retained.length - state.session.counts.retained,
    removed: state.whatIf.outcome.removed.length - state.session.counts.removed,
  };
}

/** Decision legality by stage, mirroring the server's rules so illegal
 * actions render disabled instead of producing 409s. The server stays
 * authoritative; this only drives button state. */
export function legalDecisions(session: SessionView | null): Set<string> {
  if (!session || session.status !== "InProgress") return new Set();
  const kind = session.current_stage.kind;
  const legal = new Set<string>();
  switch (kind) {
    case "Loaded":
    case "Prioritized":
    case "Clustered":
      legal.add("proceed");
      legal.add("set_thresholds");
      break;
    case "FullKG":
      legal.add("proceed");
      legal.add("set_thresholds");
      break;
    case "Pruned":
    case "PragmaticApplied":
    case "Restarted":
      legal.add("proceed");
      break;
    case "CoverageAnalyzed": {
      const info = session.current_stage.info as { satisfied?: boolean; candidates?: number };
      const candidateCount = info.candidates ?? 0;
      const budgetSpent =
        session.pragmatic_iteration >= session.config.max_pragmatic_iterations;
      if (info.satisfied) {
        legal.add("finalize");
      } else {
        if (candidateCount > 0 && !budgetSpent) legal.add("accept_candidates");
        if (candidateCount === 0 || budgetSpent) legal.add("restart");
      }
      break;
    }
  }
  return legal;
}
