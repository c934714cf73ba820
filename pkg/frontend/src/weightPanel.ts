/**
 * Left region: per-metric weight inputs plus a preset selector.
 *
 * Every committed edit PUTs the combination and asks the app to reload the
 * ranked list. All-zero weights never leave the client: the panel shows an
 * inline error instead, mirroring the server's 422.
 */

import { ApiClient, ApiError, Combination } from "./api.js";

export class WeightPanel {
  readonly element: HTMLElement;
  private inputs = new Map<string, HTMLInputElement>();
  private presetSelect: HTMLSelectElement;
  private errorBox: HTMLElement;
  private metricNames: string[] = [];

  constructor(
    private readonly api: ApiClient,
    private readonly onRankingChanged: () => void,
  ) {
    this.element = document.createElement("section");
    this.element.className = "panel weight-panel";
    this.element.innerHTML = `<h2>Ranking weights</h2>`;
    this.presetSelect = document.createElement("select");
    this.presetSelect.className = "preset-select";
    this.presetSelect.addEventListener("change", () => this.applyPreset());
    this.errorBox = document.createElement("p");
    this.errorBox.className = "weight-error";
    this.errorBox.hidden = true;
  }

  async init(): Promise<void> {
    const [presets, active] = await Promise.all([
      this.api.presets(),
      this.api.combination(),
    ]);
    const names = new Set<string>();
    for (const preset of presets) {
      for (const metric of Object.keys(preset.weights)) names.add(metric);
    }
    for (const metric of Object.keys(active.weights)) names.add(metric);
    this.metricNames = [...names].sort();

    const blank = document.createElement("option");
    blank.value = "";
    blank.textContent = "— preset —";
    this.presetSelect.appendChild(blank);
    for (const preset of presets) {
      const option = document.createElement("option");
      option.value = preset.name;
      option.textContent = preset.name;
      this.presetSelect.appendChild(option);
    }
    this.element.appendChild(this.presetSelect);

    const list = document.createElement("div");
    list.className = "weight-rows";
    for (const metric of this.metricNames) {
      const row = document.createElement("label");
      row.className = "weight-row";
      const caption = document.createElement("span");
      caption.textContent = metric;
      const input = document.createElement("input");
      input.type = "number";
      input.min = "0";
      input.step = "0.5";
      input.dataset.metric = metric;
      input.addEventListener("change", () => this.applyWeights());
      this.inputs.set(metric, input);
      row.append(caption, input);
      list.appendChild(row);
    }
    this.element.appendChild(list);
    this.element.appendChild(this.errorBox);
    this.showCombination(active);
  }

  showCombination(combination: Combination): void {
    for (const [metric, input] of this.inputs) {
      input.value = String(combination.weights[metric] ?? 0);
    }
    this.presetSelect.value = this.presetSelect.querySelector(
      `option[value="${CSS.escape(combination.name)}"]`,
    )
      ? combination.name
      : "";
  }

  currentWeights(): Record<string, number> {
    const weights: Record<string, number> = {};
    for (const [metric, input] of this.inputs) {
      const value = Number(input.value);
      weights[metric] = Number.isFinite(value) && value >= 0 ? value : 0;
    }
    return weights;
  }

  private setError(message: string | null): void {
    this.errorBox.hidden = message === null;
    this.errorBox.textContent = message ?? "";
  }

  private async applyWeights(): Promise<void> {
    const weights = this.currentWeights();
    if (!Object.values(weights).some((w) => w > 0)) {
      this.setError("At least one weight must be positive.");
      return;
    }
    this.setError(null);
    try {
      const applied = await this.api.putCombination({ name: "custom", weights });
      this.showCombination(applied);
      this.onRankingChanged();
    } catch (error) {
      this.setError(error instanceof ApiError ? error.message : String(error));
    }
  }

  private async applyPreset(): Promise<void> {
    const name = this.presetSelect.value;
    if (!name) return;
    this.setError(null);
    try {
      const applied = await this.api.putCombination({ name });
      this.showCombination(applied);
      this.onRankingChanged();
    } catch (error) {
      this.setError(error instanceof ApiError ? error.message : String(error));
    }
  }
}
