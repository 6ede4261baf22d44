/** Browser bootstrap: wires the API client, the view state, and the
 * render functions into the static page served next to the API.
 *
 * All truth is fetched: after every committed decision the session and
 * its artifact panes are re-polled; what-if previews never touch the
 * session. This module is the only DOM-aware file.
 */

import { ApiError, StudioApi } from "./api.js";
import { forceLayout } from "./layout.js";
import {
  initialState,
  legalDecisions,
  selectNode,
  selectStage,
  setCandidates,
  setHistogram,
  setSession,
  setSliders,
  setWhatIf,
  toggleCandidate,
  type ViewState,
} from "./state.js";
import { renderCandidates } from "./render/candidates.js";
import { renderCoverage } from "./render/coverage.js";
import { renderGraph } from "./render/graph.js";
import { renderHistogram } from "./render/histogram.js";
import { renderThresholds } from "./render/thresholds.js";
import { renderTimeline } from "./render/timeline.js";
import type { DecisionDoc } from "./types.js";

interface Panes {
  graph: HTMLElement;
  histogram: HTMLElement;
  coverage: HTMLElement;
  thresholds: HTMLElement;
  candidates: HTMLElement;
  timeline: HTMLElement;
  sessionPicker: HTMLSelectElement;
  catalogPicker: HTMLSelectElement;
  actions: HTMLElement;
  notice: HTMLElement;
}

function pane(id: string): HTMLElement {
  const el = document.getElementById(id);
  if (!el) throw new Error(`missing pane #${id}`);
  return el;
}

export function boot(base: string = ""): void {
  const api = new StudioApi(base);
  let state: ViewState = initialState();
  let whatIfTimer: ReturnType<typeof setTimeout> | null = null;

  const panes: Panes = {
    graph: pane("graph"),
    histogram: pane("histogram"),
    coverage: pane("coverage"),
    thresholds: pane("thresholds"),
    candidates: pane("candidates"),
    timeline: pane("timeline"),
    sessionPicker: pane("session-picker") as HTMLSelectElement,
    catalogPicker: pane("catalog-picker") as HTMLSelectElement,
    actions: pane("actions"),
    notice: pane("notice"),
  };

  function notify(message: string, isError = false): void {
    panes.notice.textContent = message;
    panes.notice.className = isError ? "notice error" : "notice";
  }

  function renderActions(): void {
    const legal = legalDecisions(state.session);
    const buttons: [string, string][] = [
      ["proceed", "Proceed"],
      ["finalize", "Finalize"],
      ["restart", "Restart"],
    ];
    panes.actions.innerHTML = buttons
      .map(
        ([kind, label]) =>
          `<button type="button" class="decision" data-kind="${kind}"${
            legal.has(kind) ? "" : " disabled"
          }>${label}</button>`,
      )
      .join("");
  }

  async function redrawArtifacts(): Promise<void> {
    const session = state.session;
    if (!session) return;
    const stage = state.selectedStage ?? undefined;

    try {
      const graph = await api.graph(session.id, stage);
      // reasons reflect the latest committed selection, so only attach
      // them when showing the current stage; tolerate failure, the
      // tooltip just loses its reason line
      let reasons: Record<string, string> = {};
      if (stage === undefined || stage === session.current_stage.seq) {
        try {
          reasons = await api.selectionReasons(session.id);
        } catch {
          reasons = {};
        }
      }
      panes.graph.innerHTML = renderGraph(graph, forceLayout(graph), {
        selected: state.selectedNode,
        reasons,
      });
    } catch (error) {
      if (error instanceof ApiError && error.status === 404) {
        panes.graph.innerHTML = '<p class="placeholder">No graph at this stage yet.</p>';
      } else {
        throw error;
      }
    }

    try {
      state = setHistogram(state, await api.histogram(session.id));
      panes.histogram.innerHTML = renderHistogram(state.histogram!, {
        kpiMin: state.sliders.kpi_score_min,
      });
    } catch (error) {
      if (error instanceof ApiError && error.status === 404) {
        panes.histogram.innerHTML = '<p class="placeholder">Run prioritization first.</p>';
      } else {
        throw error;
      }
    }

    try {
      panes.coverage.innerHTML = renderCoverage(await api.coverage(session.id));
    } catch (error) {
      if (error instanceof ApiError && error.status === 404) {
        panes.coverage.innerHTML = '<p class="placeholder">Coverage not analyzed yet.</p>';
      } else {
        throw error;
      }
    }

    try {
      state = setCandidates(state, await api.candidates(session.id));
    } catch (error) {
      if (error instanceof ApiError && error.status === 404) {
        state = setCandidates(state, []);
      } else {
        throw error;
      }
    }
    panes.candidates.innerHTML = renderCandidates(state);
    panes.thresholds.innerHTML = renderThresholds(state);
    panes.timeline.innerHTML = renderTimeline(session, state.selectedStage);
    renderActions();
  }

  async function loadSession(id: string): Promise<void> {
    state = setSession(state, await api.getSession(id));
    await redrawArtifacts();
    notify(`Session ${id} loaded.`);
  }

  async function commit(decision: DecisionDoc): Promise<void> {
    const session = state.session;
    if (!session) return;
    try {
      state = setSession(state, await api.advance(session.id, decision));
      await redrawArtifacts();
      notify(`Applied ${decision.kind}.`);
    } catch (error) {
      if (error instanceof ApiError && error.isIllegalAction) {
        renderActions();
        notify(error.message, true);
      } else if (error instanceof ApiError) {
        notify(`${error.code}: ${error.message}`, true);
      } else {
        throw error;
      }
    }
  }

  function scheduleWhatIf(): void {
    if (whatIfTimer !== null) clearTimeout(whatIfTimer);
    whatIfTimer = setTimeout(async () => {
      const session = state.session;
      if (!session) return;
      try {
        const result = await api.whatIf(session.id, {
          trl_min: state.sliders.trl_min,
          kpi_score_min: state.sliders.kpi_score_min,
        });
        state = setWhatIf(state, result);
        panes.thresholds.innerHTML = renderThresholds(state);
        panes.histogram.innerHTML = renderHistogram(result.histogram, {
          kpiMin: state.sliders.kpi_score_min,
        });
      } catch (error) {
        if (error instanceof ApiError) notify(`${error.code}: ${error.message}`, true);
        else throw error;
      }
    }, 250);
  }

  async function refreshPickers(): Promise<void> {
    const catalogs = await api.listCatalogs();
    panes.catalogPicker.innerHTML = catalogs
      .map(
        (c) =>
          `<option value="${c.catalog_id}">${c.use_case_name} (${c.enablers} enablers)</option>`,
      )
      .join("");
    const sessions = await api.listSessions();
    panes.sessionPicker.innerHTML =
      '<option value="">new session…</option>' +
      sessions
        .map((s) => `<option value="${s.id}">${s.id} · ${s.status}</option>`)
        .join("");
  }

  document.addEventListener("input", (event) => {
    const target = event.target as HTMLElement;
    if (target.classList.contains("slider")) {
      const input = target as HTMLInputElement;
      state = setSliders(state, { [input.name]: Number(input.value) });
      panes.thresholds.innerHTML = renderThresholds(state);
      scheduleWhatIf();
    }
  });

  document.addEventListener("change", (event) => {
    const target = event.target as HTMLElement;
    if (target.classList.contains("candidate-tick")) {
      const id = target.getAttribute("data-id");
      if (id) {
        state = toggleCandidate(state, id);
        panes.candidates.innerHTML = renderCandidates(state);
      }
    } else if (target === panes.sessionPicker && panes.sessionPicker.value) {
      void loadSession(panes.sessionPicker.value);
    }
  });

  document.addEventListener("click", (event) => {
    const target = (event.target as HTMLElement).closest(
      ".decision, .accept-candidates, .commit-thresholds, .timeline-entry, .node, #create-session",
    ) as HTMLElement | null;
    if (!target) return;

    if (target.classList.contains("decision")) {
      const kind = target.getAttribute("data-kind");
      if (kind === "proceed" || kind === "finalize" || kind === "restart") {
        void commit({ kind });
      }
    } else if (target.classList.contains("accept-candidates")) {
      if (state.checklist.length > 0) {
        void commit({ kind: "accept_candidates", ids: [...state.checklist] });
      }
    } else if (target.classList.contains("commit-thresholds")) {
      void commit({
        kind: "set_thresholds",
        trl_min: state.sliders.trl_min,
        kpi_score_min: state.sliders.kpi_score_min,
      });
    } else if (target.classList.contains("timeline-entry")) {
      const seq = Number(target.getAttribute("data-seq"));
      state = selectStage(state, Number.isNaN(seq) ? null : seq);
      void redrawArtifacts();
    } else if (target.classList.contains("node")) {
      state = selectNode(state, target.getAttribute("data-id"));
      void redrawArtifacts();
    } else if (target.id === "create-session") {
      const catalogId = panes.catalogPicker.value;
      if (catalogId) {
        void (async () => {
          state = setSession(state, await api.createSession(catalogId));
          await refreshPickers();
          await redrawArtifacts();
          notify(`Session ${state.session?.id} created.`);
        })();
      }
    }
  });

  void refreshPickers().catch((error: unknown) => {
    notify(error instanceof Error ? error.message : String(error), true);
  });
}
