/**
 * Right region: the ranked term list.
 *
 * Rows render in exactly the order the server delivered them; the list
 * never re-sorts client-side. Enter classifies the focused row promising,
 * Delete discards it; the row restyles optimistically and rolls back with
 * a toast if the request fails. Focus then advances to the next
 * unclassified row. Classifications go through a queue so at most one
 * mutation is in flight and rapid keypresses POST in order.
 */

import { ApiClient, TermRow, TermStatus } from "./api.js";
import { MutationQueue } from "./mutationQueue.js";

const PAGE_SIZE = 200;

export interface TermListCallbacks {
  onClassified: (revision: number) => void;
  onSelect: (key: string) => void;
}

function showToast(message: string): void {
  const toast = document.createElement("div");
  toast.className = "toast";
  toast.textContent = message;
  document.body.appendChild(toast);
  setTimeout(() => toast.remove(), 4000);
}

export class TermList {
  readonly element: HTMLElement;
  private tbody: HTMLTableSectionElement;
  private rows: TermRow[] = [];
  private focusIndex = 0;
  private queue = new MutationQueue();
  private lastRevision = 0;

  constructor(
    private readonly api: ApiClient,
    private readonly callbacks: TermListCallbacks,
  ) {
    this.element = document.createElement("section");
    this.element.className = "panel term-list";
    this.element.innerHTML = `
      <h2>Terms</h2>
      <table>
        <thead>
          <tr><th>term</th><th>score</th><th>count</th><th>silos</th><th>status</th></tr>
        </thead>
        <tbody tabindex="0"></tbody>
      </table>`;
    this.tbody = this.element.querySelector("tbody")!;
    this.tbody.addEventListener("keydown", (event) => this.onKeyDown(event));
    this.tbody.addEventListener("click", (event) => this.onClick(event));
  }

  get revision(): number {
    return this.lastRevision;
  }

  get pendingMutations(): number {
    return this.queue.pending;
  }

  focusedKey(): string | undefined {
    return this.rows[this.focusIndex]?.key;
  }

  async reload(): Promise<void> {
    const page = await this.api.getTerms({ status: "all", limit: PAGE_SIZE });
    this.rows = page.terms;
    this.renderRows();
    this.setFocus(Math.min(this.focusIndex, Math.max(0, this.rows.length - 1)));
  }

  private renderRows(): void {
    this.tbody.textContent = "";
    this.rows.forEach((row, index) => {
      const tr = document.createElement("tr");
      tr.dataset.key = row.key;
      tr.dataset.index = String(index);
      this.styleRow(tr, row);
      tr.innerHTML = `
        <td class="term-surface"></td>
        <td class="term-score"></td>
        <td class="term-count"></td>
        <td class="term-silos"></td>
        <td class="term-status"></td>`;
      tr.querySelector(".term-surface")!.textContent = row.surface;
      tr.querySelector(".term-score")!.textContent = row.score.toFixed(4);
      tr.querySelector(".term-count")!.textContent = String(row.count);
      tr.querySelector(".term-silos")!.textContent = `${row.siloSpread}/3`;
      this.renderStatus(tr, row);
      this.tbody.appendChild(tr);
    });
    this.markFocused();
  }

  private renderStatus(tr: HTMLTableRowElement, row: TermRow): void {
    const cell = tr.querySelector(".term-status")!;
    cell.textContent = row.type ? `${row.status} · ${row.type}` : row.status;
  }

  private styleRow(tr: HTMLTableRowElement, row: TermRow): void {
    tr.className = `status-${row.status}`;
  }

  private markFocused(): void {
    this.tbody.querySelectorAll("tr.focused").forEach((tr) => tr.classList.remove("focused"));
    const tr = this.tbody.children[this.focusIndex] as HTMLTableRowElement | undefined;
    if (tr) tr.classList.add("focused");
  }

  setFocus(index: number): void {
    if (this.rows.length === 0) {
      this.focusIndex = 0;
      return;
    }
    this.focusIndex = Math.max(0, Math.min(index, this.rows.length - 1));
    this.markFocused();
  }

  private advanceFocus(from: number): void {
    for (let index = from + 1; index < this.rows.length; index += 1) {
      if (this.rows[index].status === "unclassified") {
        this.setFocus(index);
        return;
      }
    }
    // No unclassified row below: keep focus at the list end.
    this.setFocus(Math.min(from, this.rows.length - 1));
  }

  private onClick(event: MouseEvent): void {
    const tr = (event.target as HTMLElement).closest("tr[data-index]");
    if (!(tr instanceof HTMLTableRowElement)) return;
    this.setFocus(Number(tr.dataset.index));
    const key = tr.dataset.key;
    if (key) this.callbacks.onSelect(key);
  }

  private onKeyDown(event: KeyboardEvent): void {
    if (event.key === "ArrowDown") {
      event.preventDefault();
      this.setFocus(this.focusIndex + 1);
    } else if (event.key === "ArrowUp") {
      event.preventDefault();
      this.setFocus(this.focusIndex - 1);
    } else if (event.key === "Enter") {
      event.preventDefault();
      this.classifyFocused("promising");
    } else if (event.key === "Delete") {
      event.preventDefault();
      this.classifyFocused("discarded");
    }
  }

  classifyFocused(status: "promising" | "discarded"): void {
    const index = this.focusIndex;
    const row = this.rows[index];
    if (!row) return;

    const previous: TermStatus = row.status;
    const tr = this.tbody.children[index] as HTMLTableRowElement | undefined;

    // Optimistic restyle, exactly one request per keypress.
    row.status = status;
    if (tr) {
      this.styleRow(tr, row);
      this.renderStatus(tr, row);
      tr.classList.add("focused");
    }
    this.advanceFocus(index);

    this.queue.enqueue(() => this.api.classify(row.key, status)).then(
      (response) => {
        this.lastRevision = response.revision;
        this.callbacks.onClassified(response.revision);
      },
      (error) => {
        row.status = previous;
        if (tr) {
          this.styleRow(tr, row);
          this.renderStatus(tr, row);
        }
        this.setFocus(index);
        showToast(`Could not classify "${row.key}": ${error.message ?? error}`);
      },
    );
  }
}
