/** Thin typed client for the selection engine's HTTP API.

All reads go through here: the UI never computes a truth value locally,
it only renders what the server returns.
*/

import type {
  Candidate,
  CatalogSummary,
  CoverageReport,
  DecisionDoc,
  GraphDoc,
  Histogram,
  SessionView,
  WhatIfResult,
} from "./types.js";

export class ApiError extends Error {
  readonly code: string;
  readonly status: number;

  constructor(status: number, code: string, message: string) {
    super(message);
    this.name = "ApiError";
    this.status = status;
    this.code = code;
  }

  /** Illegal transitions and closed sessions render as disabled actions,
   * not as failures that need a retry banner. */
  get isIllegalAction(): boolean {
    return this.code === "IllegalTransition" || this.code === "SessionClosed";
  }
}

type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

/** Parse CSV text (quoted fields, doubled quotes, \n or \r\n rows). */
export function parseCsv(text: string): string[][] {
  const rows: string[][] = [];
  let row: string[] = [];
  let field = "";
  let quoted = false;
  let i = 0;
  while (i < text.length) {
    const ch = text[i]!;
    if (quoted) {
      if (ch === '"' && text[i + 1] === '"') {
        field += '"';
        i += 2;
      } else if (ch === '"') {
        quoted = false;
        i += 1;
      } else {
        field += ch;
        i += 1;
      }
    } else if (ch === '"' && field === "") {
      quoted = true;
      i += 1;
    } else if (ch === ",") {
      row.push(field);
      field = "";
      i += 1;
    } else if (ch === "\n" || ch === "\r") {
      if (field !== "" || row.length > 0) {
        row.push(field);
        rows.push(row);
      }
      row = [];
      field = "";
      i += ch === "\r" && text[i + 1] === "\n" ? 2 : 1;
    } else {
      field += ch;
      i += 1;
    }
  }
  if (field !== "" || row.length > 0) {
    row.push(field);
    rows.push(row);
  }
  return rows;
}

export class StudioApi {
  private readonly base: string;
  private readonly fetchImpl: FetchLike;

  constructor(base: string, fetchImpl?: FetchLike) {
    this.base = base.replace(/\/+$/, "");
    this.fetchImpl = fetchImpl ?? ((url, init) => fetch(url, init));
  }

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const init: RequestInit = { method, headers: {} };
    if (body !== undefined) {
      init.headers = { "content-type": "application/json" };
      init.body = JSON.stringify(body);
    }
    const response = await this.fetchImpl(this.base + path, init);
    if (!response.ok) {
      let code = "Unknown";
      let message = `HTTP ${response.status}`;
      try {
        const doc = (await response.json()) as { error?: { code?: string; message?: string } };
        code = doc.error?.code ?? code;
        message = doc.error?.message ?? message;
      } catch {
        // non-JSON error body; keep the status line
      }
      throw new ApiError(response.status, code, message);
    }
    return (await response.json()) as T;
  }

  listCatalogs(): Promise<CatalogSummary[]> {
    return this.request("GET", "/catalogs");
  }

  uploadCatalog(doc: unknown): Promise<{ catalog_id: string; use_case_name: string }> {
    return this.request("POST", "/catalogs", doc);
  }

  createSession(catalogId: string, config?: Record<string, unknown>): Promise<SessionView> {
    const body: Record<string, unknown> = { catalog_id: catalogId };
    if (config !== undefined) body.config = config;
    return this.request("POST", "/sessions", body);
  }

  listSessions(): Promise<SessionView[]> {
    return this.request("GET", "/sessions");
  }

  getSession(id: string): Promise<SessionView> {
    return this.request("GET", `/sessions/${id}`);
  }

  advance(id: string, decision: DecisionDoc): Promise<SessionView> {
    return this.request("POST", `/sessions/${id}/advance`, decision);
  }

  graph(id: string, stage?: number): Promise<GraphDoc> {
    const suffix = stage === undefined ? "" : `?stage=${stage}`;
    return this.request("GET", `/sessions/${id}/graph${suffix}`);
  }

  histogram(id: string): Promise<Histogram> {
    return this.request("GET", `/sessions/${id}/histogram`);
  }

  coverage(id: string): Promise<CoverageReport> {
    return this.request("GET", `/sessions/${id}/coverage`);
  }

  candidates(id: string): Promise<Candidate[]> {
    return this.request("GET", `/sessions/${id}/candidates`);
  }

  /** Stateless preview; the body holds config overrides, {} for none. */
  whatIf(id: string, overrides: Record<string, unknown>): Promise<WhatIfResult> {
    return this.request("POST", `/sessions/${id}/whatif`, overrides);
  }

  /** Committed per-enabler pruning reasons, from the selection export.
   * Unlike a what-if (which re-evaluates from scratch), this reflects
   * human decisions already applied, e.g. pragmatic re-introductions. */
  async selectionReasons(id: string): Promise<Record<string, string>> {
    const rows = parseCsv(await this.exportText(id, "SelectionCsv"));
    const header = rows[0] ?? [];
    const idCol = header.indexOf("id");
    const reasonCol = header.indexOf("reason");
    const reasons: Record<string, string> = {};
    if (idCol === -1 || reasonCol === -1) return reasons;
    for (const row of rows.slice(1)) {
      const enablerId = row[idCol];
      const reason = row[reasonCol];
      if (enablerId !== undefined && reason !== undefined) reasons[enablerId] = reason;
    }
    return reasons;
  }

  async exportText(id: string, fmt: string): Promise<string> {
    const response = await this.fetchImpl(`${this.base}/sessions/${id}/export?fmt=${fmt}`);
    if (!response.ok) {
      const doc = (await response.json()) as { error?: { code?: string; message?: string } };
      throw new ApiError(
        response.status,
        doc.error?.code ?? "Unknown",
        doc.error?.message ?? `HTTP ${response.status}`,
      );
    }
    return response.text();
  }
}
