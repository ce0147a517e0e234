import { describe, expect, it } from "vitest";

import { buildHunchLayer, DEFAULT_LAYER_LIMIT, heatmapCells } from "../src/layers.js";
import { GHOST_MARK_STYLE } from "../src/styles.js";
import type { ChartViewSpec, HunchDoc } from "../src/types.js";

const view: ChartViewSpec = {
  view_id: "v1",
  chart_kind: "scatter",
  x_axis: { field: "x", scale: "linear", domain: [0, 10], range_px: [0, 100] },
  y_axis: { field: "y", scale: "linear", domain: [0, 10], range_px: [100, 0] },
  item_anchor: { i1: [10, 90], i2: [50, 50] },
};

function hunch(id: string, overrides: Partial<HunchDoc> = {}): HunchDoc {
  return {
    hunch_id: id,
    dataset_id: "d",
    dataset_fingerprint: "f",
    scope: { kind: "single_item", item_refs: ["i1"], field_ref: "y" },
    payload: { type: "assessment", rating: 3 },
    context: {
      author: { author_id: "u", display_name: "", role: null, reputation: null },
      created_at: "2026-01-01T00:00:00.000Z",
      rationale: null,
      confidence: null,
      impact_note: null,
      adjustment_note: null,
    },
    chart_anchor: null,
    stale: false,
    deleted: false,
    net_votes: 0,
    ...overrides,
  };
}

describe("hunch layer", () => {
  it("anchors item-scoped hunches at their marks", () => {
    const layer = buildHunchLayer([hunch("h1")], view);
    expect(layer.glyphs[0].at).toEqual({ px: 10, py: 90 });
  });

  it("prefers an explicit anchor from the same view", () => {
    const layer = buildHunchLayer(
      [hunch("h1", { chart_anchor: { view_id: "v1", px: 33, py: 44 } })],
      view,
    );
    expect(layer.glyphs[0].at).toEqual({ px: 33, py: 44 });
  });

  it("ignores anchors from other chart states", () => {
    const layer = buildHunchLayer(
      [hunch("h1", { chart_anchor: { view_id: "other", px: 33, py: 44 } })],
      view,
    );
    expect(layer.glyphs[0].at).toEqual({ px: 10, py: 90 });
  });

  it("caps rendered hunches and reports overflow", () => {
    const crowd = Array.from({ length: 27 }, (_, k) => hunch(`h${k}`));
    const layer = buildHunchLayer(crowd, view);
    expect(layer.glyphs.length).toBe(DEFAULT_LAYER_LIMIT);
    expect(layer.overflow).toBe(7);
  });

  it("adds a ghost mark at the original location of a manipulation", () => {
    const manipulated = hunch("h1", {
      payload: { type: "value", mode: "absolute", values: { i1: 9 } },
      context: {
        ...hunch("x").context,
        adjustment_note: JSON.stringify({ original_px: [10, 90], new_px: [10, 30] }),
      },
    });
    const layer = buildHunchLayer([manipulated], view);
    expect(layer.glyphs[0].ghost).toEqual({ px: 10, py: 90, style: GHOST_MARK_STYLE });
  });

  it("builds heatmap cells that tile the plot area", () => {
    const cells = heatmapCells(
      [
        [1, 0],
        [0, 3],
      ],
      view,
    );
    expect(cells.length).toBe(4);
    expect(cells.reduce((s, c) => s + c.count, 0)).toBe(4);
    expect(Math.max(...cells.map((c) => c.intensity))).toBe(1);
    expect(cells[0]).toMatchObject({ x: 0, y: 0, w: 50, h: 50 });
  });
});
