import { afterEach, beforeEach, describe, expect, it, vi } from "vitest";

import { TermList } from "../src/termList.js";
import { ApiClient } from "../src/api.js";
import { flushTasks, mockFetch, termRow } from "./helpers.js";

function keydown(target: HTMLElement, key: string): void {
  target.dispatchEvent(new KeyboardEvent("keydown", { key, bubbles: true }));
}

describe("TermList keyboard triage", () => {
  let classified: Array<{ key: string; status: string }>;
  let revisions: number[];
  let revision: number;
  let failNext: boolean;
  let calls: { calls: { url: string; method: string; body?: unknown }[] };
  let list: TermList;

  beforeEach(async () => {
    document.body.innerHTML = "";
    classified = [];
    revisions = [];
    revision = 0;
    failNext = false;

    const rows = [
      termRow("mlkg"),
      termRow("telco"),
      termRow("done", { status: "promising" }),
      termRow("zeta"),
    ];
    calls = mockFetch({
      "GET /api/terms": () => ({ total: rows.length, offset: 0, terms: rows }),
      "POST /api/terms/mlkg/classify": (call) => classifyRoute("mlkg", call),
      "POST /api/terms/telco/classify": (call) => classifyRoute("telco", call),
      "POST /api/terms/zeta/classify": (call) => classifyRoute("zeta", call),
    });

    function classifyRoute(key: string, call: { body?: unknown }) {
      if (failNext) {
        failNext = false;
        return new Error("simulated failure");
      }
      revision += 1;
      classified.push({ key, status: (call.body as { status: string }).status });
      return { revision };
    }

    list = new TermList(new ApiClient(""), {
      onClassified: (rev) => revisions.push(rev),
      onSelect: () => undefined,
    });
    document.body.appendChild(list.element);
    await list.reload();
  });

  afterEach(() => {
    vi.unstubAllGlobals();
  });

  function tbody(): HTMLElement {
    return list.element.querySelector("tbody")!;
  }

  function rowElement(index: number): HTMLTableRowElement {
    return tbody().children[index] as HTMLTableRowElement;
  }

  it("renders rows in served order without re-sorting", () => {
    const keys = [...tbody().querySelectorAll("tr")].map((tr) => tr.dataset.key);
    expect(keys).toEqual(["mlkg", "telco", "done", "zeta"]);
  });

  it("Enter classifies the focused row promising and advances focus", async () => {
    keydown(tbody(), "Enter");
    await flushTasks();
    expect(classified).toEqual([{ key: "mlkg", status: "promising" }]);
    expect(rowElement(0).className).toContain("status-promising");
    // focus skipped nothing: next unclassified row is "telco"
    expect(rowElement(1).classList.contains("focused")).toBe(true);
  });

  it("Delete discards and focus skips already-classified rows", async () => {
    keydown(tbody(), "Enter"); // mlkg -> promising, focus on telco
    keydown(tbody(), "Delete"); // telco -> discarded, focus skips "done" to "zeta"
    await flushTasks();
    expect(classified).toEqual([
      { key: "mlkg", status: "promising" },
      { key: "telco", status: "discarded" },
    ]);
    expect(rowElement(1).className).toContain("status-discarded");
    expect(rowElement(3).classList.contains("focused")).toBe(true);
  });

  it("Delete on the last row keeps focus at the list end", async () => {
    list.setFocus(3);
    keydown(tbody(), "Delete");
    await flushTasks();
    expect(rowElement(3).classList.contains("focused")).toBe(true);
  });

  it("rapid Enter x5 issues five POSTs in order, revision = initial + 5", async () => {
    // Re-classification is allowed, so every keypress counts.
    for (let i = 0; i < 5; i += 1) keydown(tbody(), "Enter");
    await flushTasks(10);
    const posts = calls.calls.filter((c) => c.method === "POST");
    expect(posts.length).toBe(5);
    expect(revision).toBe(5);
    expect(revisions[revisions.length - 1]).toBe(5);
    expect(list.pendingMutations).toBe(0);
  });

  it("every keypress on a classifiable row makes exactly one request", async () => {
    keydown(tbody(), "Enter");
    await flushTasks(8);
    const posts = calls.calls.filter((c) => c.method === "POST");
    expect(posts).toHaveLength(1);
  });

  it("rolls back the row and shows a toast when the request fails", async () => {
    failNext = true;
    keydown(tbody(), "Enter");
    expect(rowElement(0).className).toContain("status-promising"); // optimistic
    await flushTasks(8);
    expect(rowElement(0).className).toContain("status-unclassified"); // rolled back
    expect(document.querySelector(".toast")).not.toBeNull();
    expect(classified).toEqual([]);
  });

  it("arrow keys move focus without classifying", async () => {
    keydown(tbody(), "ArrowDown");
    keydown(tbody(), "ArrowUp");
    await flushTasks();
    expect(calls.calls.filter((c) => c.method === "POST")).toHaveLength(0);
    expect(rowElement(0).classList.contains("focused")).toBe(true);
  });
});
