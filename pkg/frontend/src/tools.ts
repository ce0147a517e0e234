/**
 * Externalization tools: the logic behind the drag handles, glyph buttons,
 * form panel, data-edit table, and model panel. Each builds the request the
 * single hunches endpoint expects; previews use the duplicated inverse
 * scale but the engine's stored value wins (assertPreviewAgreement flags
 * the difference as a client bug).
 */

import type { ChartViewSpec, HunchRequest, Scope } from "./types.js";
import { invert } from "./scales.js";

export interface DragPreview {
  value: number;
  ghost: { px: number; py: number };
  newPixel: { px: number; py: number };
}

/** Live preview while dragging a mark; ghost stays at the original anchor. */
export function dragPreview(view: ChartViewSpec, itemId: string, px: number, py: number): DragPreview {
  const anchor = view.item_anchor[itemId];
  if (!anchor) throw new Error(`item ${itemId} has no anchor in view ${view.view_id}`);
  return {
    value: invert(view.y_axis, py),
    ghost: { px: anchor[0], py: anchor[1] },
    newPixel: { px, py },
  };
}

export function dragSubmission(view: ChartViewSpec, itemId: string, px: number, py: number, rationale?: string): HunchRequest {
  return { technique: "manipulation", view_id: view.view_id, item: itemId, px, py, rationale };
}

export function groupDragSubmission(
  view: ChartViewSpec,
  itemIds: string[],
  dx: number,
  dy: number,
  rationale?: string,
): HunchRequest {
  return { technique: "group_manipulation", view_id: view.view_id, items: itemIds, dx, dy, rationale };
}

export function groupDragPreview(view: ChartViewSpec, itemIds: string[], dy: number): Record<string, number> {
  const out: Record<string, number> = {};
  for (const itemId of itemIds) {
    const anchor = view.item_anchor[itemId];
    if (!anchor) throw new Error(`item ${itemId} has no anchor in view ${view.view_id}`);
    out[itemId] = invert(view.y_axis, anchor[1] + dy);
  }
  return out;
}

// -- glyph tools -------------------------------------------------------------
// The controlled tools draw canonical shapes and submit with a declared
// style, so transcription on the server is authoritative, not guessed.

export function strikeStrokes(cx: number, cy: number, half = 14): [number, number][][] {
  return [
    [
      [cx - half, cy - half],
      [cx + half, cy + half],
    ],
    [
      [cx - half, cy + half],
      [cx + half, cy - half],
    ],
  ];
}

export function arrowStrokes(cx: number, cy: number, direction: "higher" | "lower", shaftLen = 40, barbLen = 16): [number, number][][] {
  const sign = direction === "higher" ? -1 : 1;
  const tail: [number, number] = [cx, cy - (sign * shaftLen) / 2];
  const tip: [number, number] = [cx, cy + (sign * shaftLen) / 2];
  const b = barbLen / Math.SQRT2;
  return [
    [tail, tip],
    [
      [cx - b, tip[1] - sign * b],
      tip,
      [cx + b, tip[1] - sign * b],
    ],
  ];
}

export function hlineStrokes(x0: number, x1: number, y: number): [number, number][][] {
  return [
    [
      [x0, y],
      [x1, y],
    ],
  ];
}

export function markupSubmission(
  view: ChartViewSpec,
  strokes: [number, number][][],
  style: "freeform" | "arrow" | "strike" | "hline" = "freeform",
  rationale?: string,
): HunchRequest {
  return { technique: "markup", view_id: view.view_id, strokes, style, rationale };
}

// -- panels ------------------------------------------------------------------

export function elicitationSubmission(
  scope: Scope,
  questionKind: "trust_rating" | "direction_choice",
  answer: number | string,
  confidence?: number,
  freeNote?: string,
  impactNote?: string,
): HunchRequest {
  return {
    technique: "elicitation",
    scope,
    question_kind: questionKind,
    answer,
    confidence,
    free_note: freeNote,
    impact_note: impactNote,
  };
}

export function dataEditSubmission(scope: Scope, edits: Record<string, number> | string, rationale?: string): HunchRequest {
  if (typeof edits === "string") {
    return { technique: "data_edit", scope, expression: edits, rationale };
  }
  return { technique: "data_edit", scope, edits, rationale };
}

export interface ModelPanelState {
  family: "linear" | "exponential" | "custom";
  slope?: number;
  intercept?: number;
  a?: number;
  b?: number;
  expr?: string;
  variance: number;
  nPoints: number;
  domain: [number, number];
  seed: number;
  xField?: string;
  yField?: string;
}

export function modelSubmission(panel: ModelPanelState, rationale?: string): HunchRequest {
  const spec: Record<string, unknown> =
    panel.family === "linear"
      ? { family: "linear", slope: panel.slope ?? 1, intercept: panel.intercept ?? 0 }
      : panel.family === "exponential"
        ? { family: "exponential", a: panel.a ?? 1, b: panel.b ?? 0 }
        : { family: "custom", expr: panel.expr ?? "x" };
  return {
    technique: "model",
    model_spec: spec,
    variance: panel.variance,
    n_points: panel.nPoints,
    domain: panel.domain,
    seed: panel.seed,
    x_field: panel.xField,
    y_field: panel.yField,
    rationale,
  };
}
