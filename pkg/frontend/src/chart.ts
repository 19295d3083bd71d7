import type { ChartPoint } from "./state.js";

export interface ChartLine {
  modelId: string;
  color: string;
  /** SVG polyline points attribute, e.g. "40,20 80,35" */
  points: string;
}

export interface ChartGeometry {
  width: number;
  height: number;
  lines: ChartLine[];
  /** y pixel of the average == 0 gridline */
  zeroY: number;
  xLabels: { x: number; text: string }[];
}

const PALETTE = ["#2563eb", "#dc2626", "#059669", "#d97706", "#7c3aed", "#0891b2"];

const MARGIN = { left: 34, right: 10, top: 10, bottom: 22 };

/**
 * Pure geometry for the per-arm average-reward chart. One input point per
 * arm per submitted outcome; averages live in [-1, 1].
 */
export function buildChart(
  series: Map<string, ChartPoint[]>,
  width = 460,
  height = 180,
): ChartGeometry {
  const innerWidth = width - MARGIN.left - MARGIN.right;
  const innerHeight = height - MARGIN.top - MARGIN.bottom;
  let maxStep = 1;
  for (const points of series.values()) {
    for (const point of points) {
      maxStep = Math.max(maxStep, point.step);
    }
  }
  const x = (step: number) => MARGIN.left + (step / maxStep) * innerWidth;
  const y = (average: number) => MARGIN.top + ((1 - average) / 2) * innerHeight;

  const lines: ChartLine[] = [];
  let colorIndex = 0;
  for (const [modelId, points] of series.entries()) {
    lines.push({
      modelId,
      color: PALETTE[colorIndex % PALETTE.length],
      points: points.map((p) => `${x(p.step).toFixed(1)},${y(p.average).toFixed(1)}`).join(" "),
    });
    colorIndex += 1;
  }

  const xLabels = [];
  const stride = Math.max(1, Math.ceil(maxStep / 8));
  for (let step = stride; step <= maxStep; step += stride) {
    xLabels.push({ x: x(step), text: String(step) });
  }
  return { width, height, lines, zeroY: y(0), xLabels };
}

export function pointCount(series: Map<string, ChartPoint[]>, modelId: string): number {
  return series.get(modelId)?.length ?? 0;
}
