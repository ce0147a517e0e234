/** Typed client for the hunches HTTP API. The UI never computes hunch
 * semantics locally except for previews; everything submitted goes through
 * these endpoints and the server's answer is authoritative. */

import type {
  ChartViewSpec,
  CommentThread,
  ConsensusDoc,
  DatasetViewDoc,
  DeltaDoc,
  FilterState,
  HunchDoc,
  HunchListing,
  HunchRequest,
  SummaryDoc,
} from "./types.js";

export interface Identity {
  id: string;
  name?: string;
  role?: string;
  reputation?: number;
}

export class ApiError extends Error {
  constructor(
    public status: number,
    public code: string,
    message: string,
    public detail: unknown,
  ) {
    super(message);
  }
}

export function filterToQuery(filter: FilterState): URLSearchParams {
  const params = new URLSearchParams();
  if (filter.authors?.length) params.set("authors", filter.authors.join(","));
  if (filter.roles?.length) params.set("roles", filter.roles.join(","));
  if (filter.after) params.set("after", filter.after);
  if (filter.before) params.set("before", filter.before);
  if (filter.requiresContext) params.set("requires_context", "true");
  if (filter.minScore !== undefined) params.set("min_score", String(filter.minScore));
  if (filter.knownAuthorsOf) params.set("known_authors_of", filter.knownAuthorsOf);
  if (filter.types?.length) params.set("types", filter.types.join(","));
  return params;
}

export class HunchesClient {
  constructor(
    private baseUrl: string,
    private identity: Identity,
  ) {}

  private headers(contentType = "application/json"): Record<string, string> {
    const h: Record<string, string> = {
      "content-type": contentType,
      "X-Author-Id": this.identity.id,
    };
    if (this.identity.name) h["X-Author-Name"] = this.identity.name;
    if (this.identity.role) h["X-Author-Role"] = this.identity.role;
    if (this.identity.reputation !== undefined)
      h["X-Author-Reputation"] = String(this.identity.reputation);
    return h;
  }

  private async request<T>(method: string, path: string, body?: unknown, contentType?: string): Promise<T> {
    const response = await fetch(this.baseUrl + path, {
      method,
      headers: this.headers(contentType),
      body: body === undefined ? undefined : typeof body === "string" ? body : JSON.stringify(body),
    });
    const doc = (await response.json()) as Record<string, unknown>;
    if (!response.ok) {
      const err = (doc.error ?? {}) as { code?: string; message?: string; detail?: unknown };
      throw new ApiError(response.status, err.code ?? "UNKNOWN", err.message ?? response.statusText, err.detail);
    }
    return doc as T;
  }

  ingestCsv(csv: string, datasetId: string, idField?: string) {
    const params = new URLSearchParams({ dataset_id: datasetId });
    if (idField) params.set("id_field", idField);
    return this.request<{ dataset_id: string; fingerprint: string; n_items: number }>(
      "POST",
      `/datasets?${params}`,
      csv,
      "text/csv",
    );
  }

  getDataset(datasetId: string) {
    return this.request<Record<string, unknown>>("GET", `/datasets/${datasetId}`);
  }

  registerChartView(datasetId: string, view: Partial<ChartViewSpec>) {
    return this.request<ChartViewSpec>("POST", `/datasets/${datasetId}/chart-views`, view);
  }

  getChartView(datasetId: string, viewId: string) {
    return this.request<ChartViewSpec>("GET", `/datasets/${datasetId}/chart-views/${viewId}`);
  }

  recordHunch(datasetId: string, body: HunchRequest) {
    return this.request<HunchDoc>("POST", `/datasets/${datasetId}/hunches`, body);
  }

  listHunches(datasetId: string, filter: FilterState = {}, opts: { ranked?: boolean } = {}) {
    const params = filterToQuery(filter);
    if (opts.ranked) params.set("ranked", "true");
    const qs = params.toString();
    return this.request<HunchListing>("GET", `/datasets/${datasetId}/hunches${qs ? "?" + qs : ""}`);
  }

  getHunch(hunchId: string) {
    return this.request<HunchDoc>("GET", `/hunches/${hunchId}`);
  }

  getView(datasetId: string, hunchIds: string[]) {
    return this.request<{ view: DatasetViewDoc; diff: DeltaDoc[] }>(
      "GET",
      `/datasets/${datasetId}/views?hunches=${hunchIds.join(",")}`,
    );
  }

  getSummary(datasetId: string, grid: [number, number], viewId?: string, filter: FilterState = {}) {
    const params = filterToQuery(filter);
    params.set("grid", `${grid[0]}x${grid[1]}`);
    if (viewId) params.set("view", viewId);
    return this.request<SummaryDoc>("GET", `/datasets/${datasetId}/summary?${params}`);
  }

  consensusForItem(datasetId: string, itemId: string) {
    return this.request<ConsensusDoc>("GET", `/datasets/${datasetId}/items/${itemId}/consensus`);
  }

  vote(hunchId: string, value: 1 | -1) {
    return this.request<{ hunch_id: string; net_votes: number }>(
      "POST",
      `/hunches/${hunchId}/votes`,
      { value },
    );
  }

  comment(hunchId: string, text: string, parentCommentId?: string) {
    return this.request<{ comment_id: string }>("POST", `/hunches/${hunchId}/comments`, {
      text,
      parent_comment_id: parentCommentId ?? null,
    });
  }

  getComments(hunchId: string) {
    return this.request<{ threads: CommentThread[] }>("GET", `/hunches/${hunchId}/comments`);
  }

  linkProvenance(childHunchId: string, parentHunchId: string) {
    return this.request<{ child: string; parent: string }>(
      "POST",
      `/hunches/${childHunchId}/provenance`,
      { parent: parentHunchId },
    );
  }

  modelPoints(hunchId: string) {
    return this.request<{ points: [number, number][] }>("GET", `/hunches/${hunchId}/model/points`);
  }

  setBlindMode(datasetId: string, enabled: boolean) {
    return this.request<{ blind_mode: boolean }>(
      "POST",
      `/datasets/${datasetId}/blind-mode`,
      { enabled },
    );
  }

  postNarrative(datasetId: string, promptAnswers: Record<string, string>, freeText?: string) {
    return this.request<Record<string, unknown>>("POST", `/datasets/${datasetId}/narratives`, {
      prompt_answers: promptAnswers,
      free_text: freeText ?? null,
    });
  }

  postReport(
    datasetId: string,
    includedHunchIds: string[],
    themes: { title: string; text: string; hunch_refs: string[] }[],
    narrative = "",
  ) {
    return this.request<Record<string, unknown>>("POST", `/datasets/${datasetId}/reports`, {
      included_hunch_ids: includedHunchIds,
      themes,
      narrative,
    });
  }
}
