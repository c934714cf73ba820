import { vi } from "vitest";

import type { CoverageReport, ProgressCounts, TermRow } from "../src/api.js";

export function jsonResponse(body: unknown, status = 200) {
  return {
    ok: status >= 200 && status < 300,
    status,
    json: async () => body,
  } as Response;
}

export function termRow(key: string, overrides: Partial<TermRow> = {}): TermRow {
  return {
    key,
    surface: key.toUpperCase(),
    score: 0.5,
    count: 3,
    siloSpread: 2,
    status: "unclassified",
    ...overrides,
  };
}

export const EMPTY_PROGRESS: ProgressCounts = {
  unclassified: 0,
  promising: 0,
  discarded: 0,
  total: 0,
};

export const EMPTY_COVERAGE: CoverageReport = {
  mail: { total: 0, covered: 0, uncovered: 0 },
  calendar: { total: 0, covered: 0, uncovered: 0 },
  bookmark: { total: 0, covered: 0, uncovered: 0 },
  terms: EMPTY_PROGRESS,
};

export interface FetchCall {
  url: string;
  method: string;
  body?: unknown;
}

/**
 * Installs a fetch mock backed by a route table. Routes map
 * "METHOD pathname" to a handler returning the JSON body.
 */
export function mockFetch(
  routes: Record<string, (call: FetchCall) => unknown>,
): { calls: FetchCall[] } {
  const calls: FetchCall[] = [];
  vi.stubGlobal(
    "fetch",
    vi.fn(async (input: string, init?: RequestInit) => {
      const url = new URL(String(input), "http://test.local");
      const call: FetchCall = {
        url: url.pathname + url.search,
        method: init?.method ?? "GET",
        body: init?.body ? JSON.parse(String(init.body)) : undefined,
      };
      calls.push(call);
      const handler = routes[`${call.method} ${url.pathname}`];
      if (!handler) {
        return jsonResponse({ code: "not-found", message: `no route ${call.url}` }, 404);
      }
      const result = handler(call);
      if (result instanceof Error) {
        return jsonResponse({ code: "error", message: result.message }, 422);
      }
      return jsonResponse(result);
    }),
  );
  return { calls };
}

export async function flushTasks(times = 4): Promise<void> {
  for (let i = 0; i < times; i += 1) {
    await new Promise((resolve) => setTimeout(resolve, 0));
  }
}
