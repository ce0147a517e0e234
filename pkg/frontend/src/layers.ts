/**
 * Hunch layer construction: turns hunch records into renderable glyph
 * descriptors over a chart view. At most DEFAULT_LAYER_LIMIT hunches render
 * individually; beyond that the layer reports an overflow count and callers
 * show a density glyph instead of drowning the chart.
 */

import type { ChartViewSpec, HunchDoc } from "./types.js";
import { GHOST_MARK_STYLE, HUNCH_LAYER_STYLES, type MarkStyle } from "./styles.js";

export const DEFAULT_LAYER_LIMIT = 20;

export interface LayerGlyph {
  hunchId: string;
  kind: HunchDoc["payload"]["type"];
  style: MarkStyle;
  /** where to draw; absent for whole-dataset hunches (render in the margin) */
  at?: { px: number; py: number };
  /** strokes for markup glyphs, in view pixels */
  strokes?: [number, number][][];
  /** ghost mark at the original location, for manipulations */
  ghost?: { px: number; py: number; style: MarkStyle };
  stale: boolean;
}

export interface HunchLayer {
  glyphs: LayerGlyph[];
  overflow: number;
}

function anchorFor(hunch: HunchDoc, view: ChartViewSpec): { px: number; py: number } | undefined {
  if (hunch.chart_anchor && hunch.chart_anchor.view_id === view.view_id) {
    return { px: hunch.chart_anchor.px, py: hunch.chart_anchor.py };
  }
  if (hunch.scope.kind === "whole_dataset") return undefined;
  const anchors = hunch.scope.item_refs
    .map((id) => view.item_anchor[id])
    .filter((a): a is [number, number] => a !== undefined);
  if (!anchors.length) return undefined;
  return {
    px: anchors.reduce((s, a) => s + a[0], 0) / anchors.length,
    py: anchors.reduce((s, a) => s + a[1], 0) / anchors.length,
  };
}

function ghostFor(hunch: HunchDoc): { px: number; py: number; style: MarkStyle } | undefined {
  // Manipulations carry their original pixel in adjustment_note (JSON).
  const note = hunch.context.adjustment_note;
  if (!note || hunch.payload.type !== "value") return undefined;
  try {
    const parsed = JSON.parse(note) as { original_px?: unknown };
    if (Array.isArray(parsed.original_px) && parsed.original_px.length === 2) {
      const [px, py] = parsed.original_px as [number, number];
      return { px, py, style: GHOST_MARK_STYLE };
    }
  } catch {
    return undefined;
  }
  return undefined;
}

export function buildHunchLayer(
  hunches: HunchDoc[],
  view: ChartViewSpec,
  limit = DEFAULT_LAYER_LIMIT,
): HunchLayer {
  const visible = hunches.slice(0, limit);
  const glyphs: LayerGlyph[] = visible.map((hunch) => {
    const kind = hunch.payload.type;
    const glyph: LayerGlyph = {
      hunchId: hunch.hunch_id,
      kind,
      style: HUNCH_LAYER_STYLES[kind],
      at: anchorFor(hunch, view),
      stale: hunch.stale,
    };
    if (kind === "markup") {
      const strokes = (hunch.payload as { strokes?: { strokes?: [number, number][][] } }).strokes;
      glyph.strokes = strokes?.strokes;
    }
    const ghost = ghostFor(hunch);
    if (ghost) glyph.ghost = ghost;
    return glyph;
  });
  return { glyphs, overflow: Math.max(0, hunches.length - visible.length) };
}

/** Heatmap overlay cells with normalized intensity, for the summary toggle. */
export function heatmapCells(
  heatmap: number[][],
  view: ChartViewSpec,
): { x: number; y: number; w: number; h: number; count: number; intensity: number }[] {
  const xs = [...view.x_axis.range_px].sort((a, b) => a - b);
  const ys = [...view.y_axis.range_px].sort((a, b) => a - b);
  const gh = heatmap.length;
  const gw = heatmap[0]?.length ?? 0;
  const cellW = (xs[1] - xs[0]) / gw;
  const cellH = (ys[1] - ys[0]) / gh;
  const max = Math.max(1, ...heatmap.flat());
  const cells = [];
  for (let row = 0; row < gh; row++) {
    for (let col = 0; col < gw; col++) {
      cells.push({
        x: xs[0] + col * cellW,
        y: ys[0] + row * cellH,
        w: cellW,
        h: cellH,
        count: heatmap[row][col],
        intensity: heatmap[row][col] / max,
      });
    }
  }
  return cells;
}
