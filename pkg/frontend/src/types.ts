/** Wire formats of the hunches HTTP API, as consumed by this client. */

export type ScaleKind = "linear" | "log10";
export type ChartKind = "scatter" | "line" | "bar";
export type PayloadKind =
  | "assessment"
  | "exclusion"
  | "inclusion"
  | "directionality"
  | "value"
  | "range_distribution"
  | "model_based"
  | "markup"
  | "annotation";

export interface AxisSpec {
  field: string;
  scale: ScaleKind;
  domain: [number, number];
  range_px: [number, number];
}

export interface ChartViewSpec {
  view_id: string;
  chart_kind: ChartKind;
  x_axis: AxisSpec;
  y_axis: AxisSpec;
  item_anchor: Record<string, [number, number]>;
}

export interface ChartAnchor {
  view_id: string;
  px: number;
  py: number;
}

export interface Scope {
  kind: "single_item" | "item_group" | "whole_dataset";
  item_refs: string[];
  field_ref?: string | null;
}

export interface AuthorRef {
  author_id: string;
  display_name: string;
  role: string | null;
  reputation: number | null;
}

export interface HunchContext {
  author: AuthorRef;
  created_at: string;
  rationale: string | null;
  confidence: number | null;
  impact_note: string | null;
  adjustment_note: string | null;
}

export interface HunchDoc {
  hunch_id: string;
  dataset_id: string;
  dataset_fingerprint: string;
  scope: Scope;
  payload: { type: PayloadKind; [key: string]: unknown };
  context: HunchContext;
  chart_anchor: ChartAnchor | null;
  stale: boolean;
  deleted: boolean;
  net_votes: number;
  score?: number;
}

export interface HunchListing {
  hunches: HunchDoc[];
  total: number;
  withheld: number;
  blind_mode: boolean;
}

export interface ViewItemDoc {
  item_id: string;
  values: Record<string, number | string | null>;
  origins: Record<string, "original" | { hunch_derived: string }>;
  provisional: boolean;
}

export interface DatasetViewDoc {
  view_id: string;
  base_dataset_id: string;
  base_fingerprint: string;
  source_hunch_ids: string[];
  items: ViewItemDoc[];
  excluded_item_ids: string[];
}

export interface DeltaDoc {
  item_id: string;
  field: string;
  before: unknown;
  after: unknown;
  hunch_id: string;
}

export interface ConsensusDoc {
  n_hunches: number;
  direction_tally: { higher: number; lower: number };
  value_stats: { median: number; q1: number; q3: number } | null;
  range_overlap: { intersection: [number, number] | null; union: [number, number] } | null;
  mean_assessment: number | null;
}

export interface SummaryDoc {
  heatmap: number[][];
  weighted_heatmap: number[][];
  per_item: Record<string, ConsensusDoc>;
  dataset_level: Record<string, number>;
  total: number;
  view_id?: string;
}

export interface CommentDoc {
  comment_id: string;
  hunch_id: string;
  author: AuthorRef;
  text: string;
  created_at: string;
  parent_comment_id: string | null;
}

export interface CommentThread {
  comment: CommentDoc;
  replies: CommentThread[];
}

export interface FilterState {
  authors?: string[];
  roles?: string[];
  after?: string;
  before?: string;
  requiresContext?: boolean;
  minScore?: number;
  knownAuthorsOf?: string;
  types?: PayloadKind[];
}

export type HunchRequest =
  | {
      technique: "elicitation";
      scope: Scope;
      question_kind: "trust_rating" | "direction_choice";
      answer: number | string;
      confidence?: number;
      free_note?: string;
      impact_note?: string;
    }
  | { technique: "annotation"; text: string; scope?: Scope; anchor?: ChartAnchor }
  | {
      technique: "markup";
      view_id: string;
      strokes: [number, number][][];
      style?: "freeform" | "arrow" | "strike" | "hline";
      scope_hint?: Scope;
      rationale?: string;
    }
  | { technique: "manipulation"; view_id: string; item: string; px: number; py: number; rationale?: string }
  | {
      technique: "group_manipulation";
      view_id: string;
      items: string[];
      dx: number;
      dy: number;
      rationale?: string;
    }
  | {
      technique: "data_edit";
      scope: Scope;
      edits?: Record<string, number>;
      expression?: string;
      rationale?: string;
    }
  | {
      technique: "model";
      model_spec: Record<string, unknown>;
      variance: number;
      n_points: number;
      domain: [number, number];
      seed?: number;
      x_field?: string;
      y_field?: string;
      rationale?: string;
    };
