/**
 * Chart state capture and doubly-linked navigation.
 *
 * Every hunch and comment carries (or reaches through its hunch) a chart
 * anchor naming the view it was made against; selecting one navigates the
 * workspace back to that exact chart state, fetched from the server's
 * registered chart views.
 */

import type { HunchesClient } from "./api.js";
import type { ChartAnchor, ChartViewSpec } from "./types.js";

export class ChartStateStore {
  private current: ChartViewSpec | null = null;
  private listeners: ((view: ChartViewSpec) => void)[] = [];

  get currentView(): ChartViewSpec | null {
    return this.current;
  }

  onRestore(listener: (view: ChartViewSpec) => void): void {
    this.listeners.push(listener);
  }

  restore(view: ChartViewSpec): ChartViewSpec {
    this.current = view;
    for (const listener of this.listeners) listener(view);
    return view;
  }

  /** The state submitted alongside recordings; a copy, not a live reference. */
  capture(): ChartViewSpec {
    if (!this.current) throw new Error("no chart state to capture");
    return structuredClone(this.current);
  }
}

/** Resolve an anchor to its registered chart state and make it current. */
export async function navigateToAnchor(
  api: HunchesClient,
  datasetId: string,
  anchor: ChartAnchor,
  store: ChartStateStore,
): Promise<ChartViewSpec> {
  const view = await api.getChartView(datasetId, anchor.view_id);
  return store.restore(view);
}

/** Navigate from a comment: comments anchor through their hunch. */
export async function navigateToComment(
  api: HunchesClient,
  datasetId: string,
  hunchId: string,
  store: ChartStateStore,
): Promise<ChartViewSpec | null> {
  const hunch = await api.getHunch(hunchId);
  if (!hunch.chart_anchor) return null;
  return navigateToAnchor(api, datasetId, hunch.chart_anchor, store);
}
