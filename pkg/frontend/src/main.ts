import { AdvisorClient } from "./api.js";
import { buildChart } from "./chart.js";
import {
  armTableRows,
  completionSummary,
  errorBanner,
  logHeader,
  logRows,
  recommendationHeadline,
  statusText,
} from "./render.js";
import { AdvisorController, remainingModules, type SessionView } from "./state.js";

const SVG_NS = "http://www.w3.org/2000/svg";

function el<T extends Element>(id: string): T {
  const node = document.getElementById(id);
  if (node === null) {
    throw new Error(`missing element #${id}`);
  }
  return node as unknown as T;
}

function apiBase(): string {
  const override = new URLSearchParams(window.location.search).get("api");
  if (override) {
    return override.replace(/\/$/, "");
  }
  // default: same origin (service mounts the UI under /ui)
  return window.location.origin;
}

function fillTable(table: HTMLTableElement, header: string[], rows: string[][]): void {
  table.replaceChildren();
  const head = table.createTHead().insertRow();
  for (const cell of header) {
    const th = document.createElement("th");
    th.textContent = cell;
    head.appendChild(th);
  }
  const body = table.createTBody();
  for (const row of rows) {
    const tr = body.insertRow();
    for (const cell of row) {
      tr.insertCell().textContent = cell;
    }
  }
}

function drawChart(svg: SVGSVGElement, view: SessionView): void {
  const geometry = buildChart(view.series);
  svg.setAttribute("viewBox", `0 0 ${geometry.width} ${geometry.height}`);
  svg.replaceChildren();

  const zero = document.createElementNS(SVG_NS, "line");
  zero.setAttribute("x1", "30");
  zero.setAttribute("x2", String(geometry.width - 8));
  zero.setAttribute("y1", String(geometry.zeroY));
  zero.setAttribute("y2", String(geometry.zeroY));
  zero.setAttribute("class", "zeroline");
  svg.appendChild(zero);

  for (const line of geometry.lines) {
    if (line.points.length === 0) {
      continue;
    }
    const poly = document.createElementNS(SVG_NS, "polyline");
    poly.setAttribute("points", line.points);
    poly.setAttribute("fill", "none");
    poly.setAttribute("stroke", line.color);
    poly.setAttribute("stroke-width", "2");
    svg.appendChild(poly);
  }
  for (const label of geometry.xLabels) {
    const text = document.createElementNS(SVG_NS, "text");
    text.setAttribute("x", String(label.x));
    text.setAttribute("y", String(geometry.height - 6));
    text.setAttribute("class", "ticklabel");
    text.textContent = label.text;
    svg.appendChild(text);
  }

  const legend = el<HTMLDivElement>("legend");
  legend.replaceChildren();
  for (const line of geometry.lines) {
    const item = document.createElement("span");
    item.className = "legend-item";
    item.style.color = line.color;
    item.textContent = `● ${line.modelId}`;
    legend.appendChild(item);
  }
}

function render(view: SessionView): void {
  el<HTMLDivElement>("status").textContent = statusText(view);
  el<HTMLDivElement>("recommendation").textContent = recommendationHeadline(view);
  el<HTMLDivElement>("completion").textContent = completionSummary(view);

  const banner = el<HTMLDivElement>("error");
  const message = errorBanner(view);
  banner.textContent = message ?? "";
  banner.style.display = message ? "block" : "none";

  fillTable(
    el<HTMLTableElement>("arms"),
    ["model", "pulls", "cumulative", "average reward"],
    armTableRows(view),
  );
  fillTable(el<HTMLTableElement>("log"), logHeader(view), logRows(view));
  drawChart(el<SVGSVGElement>("chart"), view);

  const picker = el<HTMLSelectElement>("module-picker");
  const current = picker.value;
  picker.replaceChildren();
  for (const moduleId of remainingModules(view)) {
    const option = document.createElement("option");
    option.value = moduleId;
    option.textContent = moduleId;
    picker.appendChild(option);
  }
  if (current && remainingModules(view).includes(current)) {
    picker.value = current;
  }

  const active = view.status === "active" && !view.busy;
  el<HTMLButtonElement>("rec-faulty").disabled = !active || view.recommendation === null;
  el<HTMLButtonElement>("rec-clean").disabled = !active || view.recommendation === null;
  el<HTMLButtonElement>("pick-faulty").disabled = !active || picker.options.length === 0;
  el<HTMLButtonElement>("pick-clean").disabled = !active || picker.options.length === 0;
  el<HTMLButtonElement>("new-session").disabled = view.busy;
}

function main(): void {
  const client = new AdvisorClient(apiBase());
  const controller = new AdvisorController(client, render);

  el<HTMLButtonElement>("new-session").addEventListener("click", () => {
    const policy = el<HTMLSelectElement>("policy-picker").value;
    void controller.newSession(policy);
  });
  const submitRecommended = (actual: "faulty" | "clean") => {
    const rec = controller.view.recommendation;
    if (rec !== null) {
      void controller.submitOutcome(rec.module_id, actual);
    }
  };
  el<HTMLButtonElement>("rec-faulty").addEventListener("click", () => submitRecommended("faulty"));
  el<HTMLButtonElement>("rec-clean").addEventListener("click", () => submitRecommended("clean"));

  const submitPicked = (actual: "faulty" | "clean") => {
    const moduleId = el<HTMLSelectElement>("module-picker").value;
    if (moduleId) {
      void controller.submitOutcome(moduleId, actual);
    }
  };
  el<HTMLButtonElement>("pick-faulty").addEventListener("click", () => submitPicked("faulty"));
  el<HTMLButtonElement>("pick-clean").addEventListener("click", () => submitPicked("clean"));

  render(controller.view);
}

window.addEventListener("load", main);
