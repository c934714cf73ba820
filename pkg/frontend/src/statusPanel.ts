/**
 * Middle region: classification progress and per-silo coverage.
 *
 * Pure display: every number is a verbatim server value from /progress
 * and /coverage. A revision guard drops stale refreshes that resolve out
 * of order.
 */

import { ApiClient, CoverageReport, ProgressCounts } from "./api.js";

const SILOS = ["mail", "calendar", "bookmark"] as const;

export class StatusPanel {
  readonly element: HTMLElement;
  private appliedRevision = -1;

  constructor(private readonly api: ApiClient) {
    this.element = document.createElement("section");
    this.element.className = "panel status-panel";
    this.element.innerHTML = `
      <h2>Progress</h2>
      <p class="progress-line"></p>
      <h2>Coverage</h2>
      <table class="coverage-table">
        <thead><tr><th>silo</th><th>covered</th><th>uncovered</th><th>total</th></tr></thead>
        <tbody>
          ${SILOS.map(
            (silo) =>
              `<tr data-silo="${silo}"><td>${silo}</td>` +
              `<td class="covered"></td><td class="uncovered"></td><td class="total"></td></tr>`,
          ).join("")}
        </tbody>
      </table>`;
  }

  async refresh(revision: number): Promise<void> {
    const [progress, coverage] = await Promise.all([
      this.api.progress(),
      this.api.coverage(),
    ]);
    if (revision < this.appliedRevision) {
      return; // stale read that lost the race
    }
    this.appliedRevision = revision;
    this.render(progress, coverage);
  }

  private render(progress: ProgressCounts, coverage: CoverageReport): void {
    this.element.querySelector(".progress-line")!.textContent =
      `${progress.promising} promising · ${progress.discarded} discarded · ` +
      `${progress.unclassified} unclassified of ${progress.total} terms`;
    for (const silo of SILOS) {
      const row = this.element.querySelector(`tr[data-silo="${silo}"]`)!;
      const counts = coverage[silo];
      row.querySelector(".covered")!.textContent = String(counts.covered);
      row.querySelector(".uncovered")!.textContent = String(counts.uncovered);
      row.querySelector(".total")!.textContent = String(counts.total);
    }
  }
}
