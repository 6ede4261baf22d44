/** JSON document shapes served by the selection engine's HTTP API. */

export type NodeKind = "enabler" | "principle";
export type EdgeKind = "fulfills" | "dependency";

export interface GraphNode {
  id: string;
  kind: NodeKind;
  trl: number | null;
  node_weight: number;
  kpi_score: number;
  fulfills_any_principle: boolean;
  /** Server-assigned: blue/orange for enablers, green for principles. */
  color: string;
}

export interface GraphEdge {
  source: string;
  target: string;
  kind: EdgeKind;
  weight: number;
  /** Server-assigned: green for fulfills, red for dependency. */
  color: string;
}

export interface GraphDoc {
  nodes: GraphNode[];
  edges: GraphEdge[];
}

export interface Histogram {
  /** [score, count] pairs sorted by score. */
  buckets: [number, number][];
  total: number;
}

export interface CoverageReport {
  counts: Record<string, number>;
  contributing: Record<string, string[]>;
  gaps: string[];
  coverage_min: Record<string, number>;
  satisfied: boolean;
}

export interface Candidate {
  enabler_id: string;
  gap_categories_addressed: string[];
  kpi_score: number;
  trl: number;
  rank: number;
}

export interface PruneConfigDoc {
  trl_min: number;
  kpi_score_min: number;
  keep_migration_critical: boolean;
  carry_over_ids: string[];
  cluster_policy: string;
  dependency_policy: string;
  coverage_min: Record<string, number>;
  max_pragmatic_iterations: number;
  threshold_schedule: [number, number][];
}

export type DecisionDoc =
  | { kind: "proceed" }
  | { kind: "finalize" }
  | { kind: "restart" }
  | { kind: "set_thresholds"; trl_min?: number; kpi_score_min?: number }
  | { kind: "accept_candidates"; ids: string[] };

export interface StageView {
  seq: number;
  kind: string;
  decision: DecisionDoc | null;
  snapshots: Record<string, string>;
  info: Record<string, unknown>;
}

export interface SessionView {
  id: string;
  catalog_id: string;
  status: string;
  pragmatic_iteration: number;
  restart_index: number;
  config: PruneConfigDoc;
  counts: { nodes: number; edges: number; retained: number; removed: number };
  current_stage: StageView;
  stages: StageView[];
  links: Record<string, string>;
}

export interface OutcomeDoc {
  graph: GraphDoc;
  retained: string[];
  removed: string[];
  dependency_violations: [string, string][];
  reasons: Record<string, string>;
}

export interface ClusterDoc {
  label: string;
  member_ids: string[];
}

/** Stateless threshold probe: the selection recomputed under overrides. */
export interface WhatIfResult {
  config: PruneConfigDoc;
  outcome: OutcomeDoc;
  clusters: ClusterDoc[];
  histogram: Histogram;
  coverage: CoverageReport;
  candidates: Candidate[];
}

export interface CatalogSummary {
  catalog_id: string;
  use_case_name: string;
  enablers: number;
}

export interface ApiErrorBody {
  error: { code: string; message: string };
}
