/**
 * Bottom region: every occurrence of the selected term, grouped by silo,
 * with the matched span highlighted via the server's exact offsets.
 */

import { ApiClient, OccurrenceRow } from "./api.js";
import { splitContext } from "./highlight.js";

const SILO_ORDER = ["mail", "calendar", "bookmark"];

export class OccurrenceViewer {
  readonly element: HTMLElement;
  private body: HTMLElement;

  constructor(private readonly api: ApiClient) {
    this.element = document.createElement("section");
    this.element.className = "panel occurrence-viewer";
    this.element.innerHTML = `<h2>Occurrences</h2><div class="occurrence-body"><p class="hint">Select a term to see where it occurs.</p></div>`;
    this.body = this.element.querySelector(".occurrence-body")!;
  }

  async show(key: string): Promise<void> {
    const { occurrences } = await this.api.occurrences(key);
    this.body.textContent = "";
    const groups = new Map<string, OccurrenceRow[]>();
    for (const row of occurrences) {
      const group = groups.get(row.silo) ?? [];
      group.push(row);
      groups.set(row.silo, group);
    }
    for (const silo of SILO_ORDER) {
      const rows = groups.get(silo);
      if (!rows) continue;
      const heading = document.createElement("h3");
      heading.textContent = `${silo} (${rows.length})`;
      this.body.appendChild(heading);
      const list = document.createElement("ul");
      list.className = "occurrence-list";
      for (const row of rows) {
        const item = document.createElement("li");
        const where = document.createElement("span");
        where.className = "occurrence-where";
        where.textContent = `${row.item} · ${row.field}: `;
        const snippet = document.createElement("span");
        snippet.className = "occurrence-snippet";
        const { before, match, after } = splitContext(row);
        const mark = document.createElement("mark");
        mark.textContent = match;
        snippet.append(before, mark, after);
        item.append(where, snippet);
        list.appendChild(item);
      }
      this.body.appendChild(list);
    }
    if (occurrences.length === 0) {
      this.body.innerHTML = `<p class="hint">No occurrences recorded.</p>`;
    }
  }
}
