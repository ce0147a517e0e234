/** SVG chart rendering: original marks plus the visually distinct hunch layer. */

import type { ChartViewSpec } from "./types.js";
import type { HunchLayer, LayerGlyph } from "./layers.js";
import { ORIGINAL_MARK_STYLE, type MarkStyle } from "./styles.js";
import { project } from "./scales.js";

const SVG_NS = "http://www.w3.org/2000/svg";

export interface PlotPoint {
  itemId: string;
  x: number;
  y: number;
}

function el<K extends keyof SVGElementTagNameMap>(doc: Document, tag: K): SVGElementTagNameMap[K] {
  return doc.createElementNS(SVG_NS, tag);
}

function applyStyle(node: SVGElement, style: MarkStyle): void {
  node.setAttribute("fill", style.fill);
  node.setAttribute("stroke", style.stroke);
  node.setAttribute("stroke-width", String(style.strokeWidth));
  if (style.strokeDasharray) node.setAttribute("stroke-dasharray", style.strokeDasharray);
  if (style.opacity !== undefined) node.setAttribute("opacity", String(style.opacity));
}

/** The hatch pattern used by value-hunch fills; register once per svg. */
export function ensureHatchPattern(svg: SVGSVGElement): void {
  const doc = svg.ownerDocument;
  if (svg.querySelector("#hunch-hatch")) return;
  const defs = el(doc, "defs");
  const pattern = el(doc, "pattern");
  pattern.setAttribute("id", "hunch-hatch");
  pattern.setAttribute("width", "6");
  pattern.setAttribute("height", "6");
  pattern.setAttribute("patternUnits", "userSpaceOnUse");
  pattern.setAttribute("patternTransform", "rotate(45)");
  const line = el(doc, "line");
  line.setAttribute("x1", "0");
  line.setAttribute("y1", "0");
  line.setAttribute("x2", "0");
  line.setAttribute("y2", "6");
  line.setAttribute("stroke", "#ee7733");
  line.setAttribute("stroke-width", "2");
  pattern.appendChild(line);
  defs.appendChild(pattern);
  svg.appendChild(defs);
}

export function renderOriginalMarks(svg: SVGSVGElement, view: ChartViewSpec, points: PlotPoint[]): void {
  const doc = svg.ownerDocument;
  const group = el(doc, "g");
  group.setAttribute("class", "original-marks");
  const pixels = points.map((p) => ({
    itemId: p.itemId,
    px: project(view.x_axis, p.x),
    py: project(view.y_axis, p.y),
  }));

  if (view.chart_kind === "line") {
    const path = el(doc, "polyline");
    path.setAttribute("points", pixels.map((p) => `${p.px},${p.py}`).join(" "));
    path.setAttribute("fill", "none");
    path.setAttribute("stroke", ORIGINAL_MARK_STYLE.stroke);
    path.setAttribute("stroke-width", String(ORIGINAL_MARK_STYLE.strokeWidth));
    group.appendChild(path);
  }
  if (view.chart_kind === "bar") {
    const base = Math.max(...view.y_axis.range_px);
    for (const p of pixels) {
      const rect = el(doc, "rect");
      rect.setAttribute("x", String(p.px - 8));
      rect.setAttribute("y", String(Math.min(p.py, base)));
      rect.setAttribute("width", "16");
      rect.setAttribute("height", String(Math.abs(base - p.py)));
      rect.setAttribute("data-item", p.itemId);
      applyStyle(rect, ORIGINAL_MARK_STYLE);
      group.appendChild(rect);
    }
  } else {
    for (const p of pixels) {
      const circle = el(doc, "circle");
      circle.setAttribute("cx", String(p.px));
      circle.setAttribute("cy", String(p.py));
      circle.setAttribute("r", "4");
      circle.setAttribute("data-item", p.itemId);
      applyStyle(circle, ORIGINAL_MARK_STYLE);
      group.appendChild(circle);
    }
  }
  svg.appendChild(group);
}

function glyphNode(doc: Document, glyph: LayerGlyph): SVGElement {
  const group = el(doc, "g");
  group.setAttribute("class", `hunch hunch-${glyph.kind}`);
  group.setAttribute("data-hunch", glyph.hunchId);
  if (glyph.stale) group.setAttribute("data-stale", "true");

  if (glyph.strokes) {
    for (const stroke of glyph.strokes) {
      const path = el(doc, "polyline");
      path.setAttribute("points", stroke.map(([x, y]) => `${x},${y}`).join(" "));
      applyStyle(path, glyph.style);
      group.appendChild(path);
    }
    return group;
  }
  if (glyph.at) {
    const marker = el(doc, "circle");
    marker.setAttribute("cx", String(glyph.at.px));
    marker.setAttribute("cy", String(glyph.at.py));
    marker.setAttribute("r", "7");
    applyStyle(marker, glyph.style);
    group.appendChild(marker);
  }
  if (glyph.ghost) {
    const ghost = el(doc, "circle");
    ghost.setAttribute("cx", String(glyph.ghost.px));
    ghost.setAttribute("cy", String(glyph.ghost.py));
    ghost.setAttribute("r", "4");
    applyStyle(ghost, glyph.ghost.style);
    group.appendChild(ghost);
  }
  return group;
}

export function renderHunchLayer(svg: SVGSVGElement, layer: HunchLayer): void {
  ensureHatchPattern(svg);
  const doc = svg.ownerDocument;
  const group = el(doc, "g");
  group.setAttribute("class", "hunch-layer");
  for (const glyph of layer.glyphs) group.appendChild(glyphNode(doc, glyph));
  if (layer.overflow > 0) {
    const badge = el(doc, "text");
    badge.setAttribute("class", "hunch-overflow");
    badge.setAttribute("x", "8");
    badge.setAttribute("y", "16");
    badge.textContent = `+${layer.overflow} more hunches`;
    group.appendChild(badge);
  }
  svg.appendChild(group);
}

export function clearLayers(svg: SVGSVGElement): void {
  for (const node of Array.from(svg.querySelectorAll(".hunch-layer, .original-marks"))) {
    node.remove();
  }
}
