/**
 * The hunch layer style table.
 *
 * Discernibility rule: hunch-derived content must never look like original
 * data. That is enforced structurally here: no hunch style may reuse the
 * original marks' exact fill+stroke pair, and checkStyleTable() verifies it
 * (the test suite runs it over every payload kind).
 */

import type { PayloadKind } from "./types.js";

export interface MarkStyle {
  fill: string;
  stroke: string;
  strokeWidth: number;
  strokeDasharray?: string;
  /** extra rendering hints: hatching, sketchy jitter, ghosting */
  texture?: "hatch" | "sketchy" | "band" | "ghost" | "dotted-curve" | "glyph";
  opacity?: number;
}

export const ORIGINAL_MARK_STYLE: MarkStyle = {
  fill: "#4477aa",
  stroke: "#223355",
  strokeWidth: 1,
};

export const HUNCH_LAYER_STYLES: Record<PayloadKind, MarkStyle> = {
  assessment: { fill: "none", stroke: "#b58900", strokeWidth: 2, strokeDasharray: "2 2", texture: "glyph" },
  exclusion: { fill: "none", stroke: "#cc3311", strokeWidth: 2, texture: "glyph" },
  inclusion: { fill: "#ee7733", stroke: "#882255", strokeWidth: 1.5, strokeDasharray: "4 2", texture: "sketchy" },
  directionality: { fill: "none", stroke: "#117733", strokeWidth: 2, texture: "glyph" },
  value: { fill: "url(#hunch-hatch)", stroke: "#ee7733", strokeWidth: 1.5, texture: "hatch" },
  range_distribution: { fill: "#88ccee", stroke: "#332288", strokeWidth: 1, strokeDasharray: "3 3", texture: "band", opacity: 0.35 },
  model_based: { fill: "none", stroke: "#aa4499", strokeWidth: 1.5, strokeDasharray: "1 3", texture: "dotted-curve" },
  markup: { fill: "none", stroke: "#666666", strokeWidth: 1.5, strokeDasharray: "5 3", texture: "sketchy" },
  annotation: { fill: "#ddcc77", stroke: "#999933", strokeWidth: 1, texture: "glyph" },
};

/** Ghost marks show a manipulated item's original location. */
export const GHOST_MARK_STYLE: MarkStyle = {
  fill: "none",
  stroke: "#223355",
  strokeWidth: 1,
  strokeDasharray: "2 2",
  texture: "ghost",
  opacity: 0.4,
};

/**
 * Returns the payload kinds whose style collides with the original encoding
 * (same exact fill and stroke). An empty list means the table is disjoint.
 */
export function checkStyleTable(
  styles: Record<string, MarkStyle> = HUNCH_LAYER_STYLES,
  original: MarkStyle = ORIGINAL_MARK_STYLE,
): string[] {
  const offenders: string[] = [];
  for (const [kind, style] of Object.entries(styles)) {
    if (style.fill === original.fill && style.stroke === original.stroke) {
      offenders.push(kind);
    }
  }
  return offenders;
}
