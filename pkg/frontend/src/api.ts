/**
 * Typed client for the /api endpoints.
 *
 * The UI never computes scores, coverage or filtering itself: every number
 * it renders comes verbatim from these responses.
 */

export type TermStatus = "unclassified" | "promising" | "discarded";

export interface TermRow {
  key: string;
  surface: string;
  score: number;
  count: number;
  siloSpread: number;
  status: TermStatus;
  type?: string;
}

export interface TermsPage {
  total: number;
  offset: number;
  terms: TermRow[];
}

export interface OccurrenceRow {
  itemId: string;
  item: string;
  silo: string;
  field: string;
  start: number;
  end: number;
  surface: string;
  context: string;
  contextStart: number;
}

export interface ProgressCounts {
  unclassified: number;
  promising: number;
  discarded: number;
  total: number;
}

export interface SiloCoverage {
  total: number;
  covered: number;
  uncovered: number;
}

export interface CoverageReport {
  mail: SiloCoverage;
  calendar: SiloCoverage;
  bookmark: SiloCoverage;
  terms: ProgressCounts;
}

export interface Combination {
  name: string;
  weights: Record<string, number>;
}

export class ApiError extends Error {
  constructor(
    public readonly status: number,
    public readonly code: string,
    message: string,
  ) {
    super(message);
  }
}

async function parseError(response: Response): Promise<ApiError> {
  let code = "error";
  let message = `HTTP ${response.status}`;
  try {
    const body = await response.json();
    if (typeof body.code === "string") code = body.code;
    if (typeof body.message === "string") message = body.message;
  } catch {
    // non-JSON error body; keep defaults
  }
  return new ApiError(response.status, code, message);
}

export class ApiClient {
  constructor(private readonly base: string = "") {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await fetch(this.base + path, {
      headers: { "content-type": "application/json" },
      ...init,
    });
    if (!response.ok) {
      throw await parseError(response);
    }
    return (await response.json()) as T;
  }

  getTerms(
    params: { status?: string; offset?: number; limit?: number; sort?: string } = {},
  ): Promise<TermsPage> {
    const query = new URLSearchParams();
    if (params.status) query.set("status", params.status);
    if (params.sort) query.set("sort", params.sort);
    if (params.offset !== undefined) query.set("offset", String(params.offset));
    if (params.limit !== undefined) query.set("limit", String(params.limit));
    const suffix = query.toString() ? `?${query.toString()}` : "";
    return this.request<TermsPage>(`/api/terms${suffix}`);
  }

  classify(key: string, status: "promising" | "discarded", type?: string) {
    return this.request<{ revision: number }>(
      `/api/terms/${encodeURIComponent(key)}/classify`,
      { method: "POST", body: JSON.stringify(type ? { status, type } : { status }) },
    );
  }

  occurrences(key: string) {
    return this.request<{ key: string; occurrences: OccurrenceRow[] }>(
      `/api/terms/${encodeURIComponent(key)}/occurrences`,
    );
  }

  progress(): Promise<ProgressCounts> {
    return this.request<ProgressCounts>("/api/progress");
  }

  coverage(): Promise<CoverageReport> {
    return this.request<CoverageReport>("/api/coverage");
  }

  combination(): Promise<Combination> {
    return this.request<Combination>("/api/combination");
  }

  putCombination(body: { name?: string; weights?: Record<string, number> }) {
    return this.request<Combination & { revision: number }>("/api/combination", {
      method: "PUT",
      body: JSON.stringify(body),
    });
  }

  presets(): Promise<Combination[]> {
    return this.request<Combination[]>("/api/presets");
  }
}
