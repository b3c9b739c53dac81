/**
 * Deterministic SVG rendering of chart data: fixed canvas, fixed palette,
 * numbers formatted to a fixed precision.  No external renderer needed.
 */

import { ChartData, Series } from "./chart.js";
import { Variant } from "./dat.js";

const WIDTH = 800;
const HEIGHT = 500;
const MARGIN = { top: 48, right: 130, bottom: 56, left: 84 };

const COLORS: Record<Variant, string> = {
  BDD: "#000000",
  BDDc: "#7f7f7f",
  T0: "#1f77b4",
  T1: "#d62728",
  E0: "#2ca02c",
  E1: "#ff7f0e",
};

const DASHES: Record<Variant, string> = {
  BDD: "",
  BDDc: "6 3",
  T0: "",
  T1: "2 3",
  E0: "",
  E1: "2 3",
};

function fmt(value: number): string {
  const rounded = Math.round(value * 100) / 100;
  return Object.is(rounded, -0) ? "0" : String(rounded);
}

function niceTicks(lo: number, hi: number, count = 6): number[] {
  if (lo === hi) {
    return [lo];
  }
  const span = hi - lo;
  const step = Math.pow(10, Math.floor(Math.log10(span / count)));
  const candidates = [step, 2 * step, 5 * step, 10 * step];
  const chosen = candidates.find((c) => span / c <= count) ?? 10 * step;
  const ticks: number[] = [];
  for (let t = Math.ceil(lo / chosen) * chosen; t <= hi + 1e-9; t += chosen) {
    ticks.push(Math.abs(t) < 1e-9 ? 0 : t);
  }
  return ticks;
}

export function renderSvg(data: ChartData): string {
  const points = data.series.flatMap((s) => s.points);
  if (points.length === 0) {
    throw new Error("nothing to draw: every series is empty");
  }
  const xs = points.map((p) => p.x).concat(data.xDomain, data.markers);
  const ys = points.map((p) => p.y);
  let xMin = Math.min(...xs);
  let xMax = Math.max(...xs);
  let yMin = Math.min(0, ...ys);
  let yMax = Math.max(...ys);
  if (xMin === xMax) {
    xMin -= 1;
    xMax += 1;
  }
  if (yMin === yMax) {
    yMax += 1;
  }
  const plotW = WIDTH - MARGIN.left - MARGIN.right;
  const plotH = HEIGHT - MARGIN.top - MARGIN.bottom;
  const sx = (x: number) => MARGIN.left + ((x - xMin) / (xMax - xMin)) * plotW;
  const sy = (y: number) =>
    MARGIN.top + plotH - ((y - yMin) / (yMax - yMin)) * plotH;

  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${WIDTH}" height="${HEIGHT}" viewBox="0 0 ${WIDTH} ${HEIGHT}">`,
  );
  parts.push(`<rect width="${WIDTH}" height="${HEIGHT}" fill="#ffffff"/>`);
  parts.push(
    `<text x="${WIDTH / 2}" y="24" text-anchor="middle" font-size="16" font-family="sans-serif">${data.title}</text>`,
  );

  for (const t of niceTicks(xMin, xMax)) {
    const x = fmt(sx(t));
    parts.push(
      `<line x1="${x}" y1="${MARGIN.top}" x2="${x}" y2="${MARGIN.top + plotH}" stroke="#e0e0e0"/>`,
      `<text x="${x}" y="${MARGIN.top + plotH + 18}" text-anchor="middle" font-size="11" font-family="sans-serif">${fmt(t)}</text>`,
    );
  }
  for (const t of niceTicks(yMin, yMax)) {
    const y = fmt(sy(t));
    parts.push(
      `<line x1="${MARGIN.left}" y1="${y}" x2="${MARGIN.left + plotW}" y2="${y}" stroke="#e0e0e0"/>`,
      `<text x="${MARGIN.left - 8}" y="${y}" text-anchor="end" dominant-baseline="middle" font-size="11" font-family="sans-serif">${fmt(t)}</text>`,
    );
  }

  for (const marker of data.markers) {
    const x = fmt(sx(marker));
    parts.push(
      `<line class="pow2-marker" x1="${x}" y1="${MARGIN.top}" x2="${x}" y2="${MARGIN.top + plotH}" stroke="#999999" stroke-dasharray="5 4"/>`,
    );
  }

  for (const series of data.series) {
    if (series.points.length === 0) continue;
    const color = COLORS[series.label];
    const path = series.points
      .map((p) => `${fmt(sx(p.x))},${fmt(sy(p.y))}`)
      .join(" ");
    const dash = DASHES[series.label]
      ? ` stroke-dasharray="${DASHES[series.label]}"`
      : "";
    parts.push(
      `<polyline class="series-${series.label}" fill="none" stroke="${color}" stroke-width="2"${dash} points="${path}"/>`,
    );
    for (const p of series.points) {
      parts.push(
        `<circle class="series-${series.label}" cx="${fmt(sx(p.x))}" cy="${fmt(sy(p.y))}" r="2.5" fill="${color}"/>`,
      );
    }
  }

  data.series.forEach((series, i) => {
    const y = MARGIN.top + 14 + i * 20;
    const x = WIDTH - MARGIN.right + 14;
    parts.push(
      `<line x1="${x}" y1="${y - 4}" x2="${x + 22}" y2="${y - 4}" stroke="${COLORS[series.label]}" stroke-width="2"/>`,
      `<text x="${x + 28}" y="${y}" font-size="12" font-family="sans-serif">${series.label}</text>`,
    );
  });

  parts.push(
    `<text x="${MARGIN.left + plotW / 2}" y="${HEIGHT - 12}" text-anchor="middle" font-size="13" font-family="sans-serif">${data.xLabel}</text>`,
    `<text x="20" y="${MARGIN.top + plotH / 2}" text-anchor="middle" font-size="13" font-family="sans-serif" transform="rotate(-90 20 ${MARGIN.top + plotH / 2})">${data.yLabel}</text>`,
  );
  parts.push("</svg>");
  return parts.join("\n") + "\n";
}
