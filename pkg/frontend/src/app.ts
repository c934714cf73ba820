/**
 * Wires the four regions together: weights (left), term list (right),
 * progress/coverage (middle), occurrences (bottom).
 */

import { ApiClient } from "./api.js";
import { OccurrenceViewer } from "./occurrenceViewer.js";
import { StatusPanel } from "./statusPanel.js";
import { TermList } from "./termList.js";
import { WeightPanel } from "./weightPanel.js";

export class TriageApp {
  readonly api: ApiClient;
  readonly weights: WeightPanel;
  readonly terms: TermList;
  readonly status: StatusPanel;
  readonly occurrences: OccurrenceViewer;

  constructor(baseUrl: string = "") {
    this.api = new ApiClient(baseUrl);
    this.status = new StatusPanel(this.api);
    this.occurrences = new OccurrenceViewer(this.api);
    this.terms = new TermList(this.api, {
      onClassified: (revision) => {
        void this.status.refresh(revision);
      },
      onSelect: (key) => {
        void this.occurrences.show(key);
      },
    });
    this.weights = new WeightPanel(this.api, () => {
      void this.terms.reload();
    });
  }

  async mount(root: HTMLElement): Promise<void> {
    const main = document.createElement("div");
    main.className = "layout";
    const left = document.createElement("div");
    left.className = "column left";
    left.append(this.weights.element, this.status.element);
    const right = document.createElement("div");
    right.className = "column right";
    right.append(this.terms.element);
    main.append(left, right);
    root.append(main, this.occurrences.element);

    await this.weights.init();
    await this.terms.reload();
    await this.status.refresh(0);
  }
}
