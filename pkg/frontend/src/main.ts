import { TriageApp } from "./app.js";

const root = document.getElementById("app");
if (root) {
  const app = new TriageApp("");
  void app.mount(root).then(() => {
    root.querySelector<HTMLElement>("tbody")?.focus();
  });
}
