/**
 * Workspace wiring: one dataset, one chart, the tool palette and panels.
 *
 * The workspace is a thin client: previews are local for responsiveness,
 * submissions go through the API, and whatever the server stores is what
 * renders. Preview/stored disagreement beyond tolerance is logged as a
 * client bug.
 */

import { ApiError, HunchesClient, type Identity } from "./api.js";
import { ChartStateStore, navigateToComment } from "./chartState.js";
import { clearLayers, renderHunchLayer, renderOriginalMarks, type PlotPoint } from "./chart.js";
import { buildHunchLayer, DEFAULT_LAYER_LIMIT } from "./layers.js";
import { assertPreviewAgreement } from "./scales.js";
import { blindModeBanner } from "./panels.js";
import { dragPreview, dragSubmission } from "./tools.js";
import type { ChartViewSpec, FilterState, HunchDoc, HunchListing } from "./types.js";

export class HunchesWorkspace {
  readonly api: HunchesClient;
  readonly chartState = new ChartStateStore();
  filter: FilterState = {};
  layerLimit = DEFAULT_LAYER_LIMIT;
  private listing: HunchListing | null = null;

  constructor(
    baseUrl: string,
    identity: Identity,
    readonly datasetId: string,
    private svg?: SVGSVGElement,
    private log: (msg: string) => void = console.error,
  ) {
    this.api = new HunchesClient(baseUrl, identity);
  }

  async openChart(viewId: string): Promise<ChartViewSpec> {
    const view = await this.api.getChartView(this.datasetId, viewId);
    return this.chartState.restore(view);
  }

  async refresh(points: PlotPoint[] = []): Promise<HunchListing> {
    this.listing = await this.api.listHunches(this.datasetId, this.filter, { ranked: true });
    const view = this.chartState.currentView;
    if (this.svg && view) {
      clearLayers(this.svg);
      renderOriginalMarks(this.svg, view, points);
      renderHunchLayer(this.svg, buildHunchLayer(this.listing.hunches, view, this.layerLimit));
    }
    return this.listing;
  }

  get banner(): string | null {
    return this.listing ? blindModeBanner(this.listing) : null;
  }

  /**
   * Submit a drag. The preview value shown during the gesture is computed
   * locally; the stored hunch comes back from the server and wins.
   */
  async submitDrag(itemId: string, px: number, py: number, rationale?: string): Promise<HunchDoc> {
    const view = this.chartState.capture();
    const preview = dragPreview(view, itemId, px, py);
    const stored = await this.api.recordHunch(this.datasetId, dragSubmission(view, itemId, px, py, rationale));
    const storedValue = (stored.payload as { values?: Record<string, number> }).values?.[itemId];
    if (storedValue !== undefined) {
      assertPreviewAgreement(view.y_axis, preview.value, storedValue, this.log);
    }
    return stored;
  }

  /** Doubly-linked navigation: from a comment's hunch back to its chart state. */
  async selectComment(hunchId: string): Promise<ChartViewSpec | null> {
    try {
      return await navigateToComment(this.api, this.datasetId, hunchId, this.chartState);
    } catch (err) {
      if (err instanceof ApiError) {
        this.log(`navigation failed: ${err.code} ${err.message}`);
        return null;
      }
      throw err;
    }
  }
}
