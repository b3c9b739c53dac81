/**
 * Chart construction: series extraction from a parsed table, for the two
 * chart families.
 *
 * Absolute charts show node counts per announcement round for one fixed
 * instance.  Relative charts show the round -1 averages as percentage
 * differences against the BDD column, with BDD itself the zero baseline.
 * Cells of -1 (unmeasured variants) are skipped.
 */

import { BenchTable, Variant, VARIANTS } from "./dat.js";

export interface Point {
  x: number;
  y: number;
}

export interface Series {
  label: Variant;
  points: Point[];
}

export interface ChartData {
  title: string;
  xLabel: string;
  yLabel: string;
  series: Series[];
  /** x positions of dashed vertical marker lines */
  markers: number[];
  /** extra x values the domain must cover (for markers at the edge) */
  xDomain: number[];
}

export class SelectionError extends Error {}

export interface AbsoluteFilter {
  n: number;
  m?: number;
}

export function absoluteChart(table: BenchTable, filter: AbsoluteFilter): ChartData {
  const rows = table.rows.filter(
    (row) =>
      !row.isAverage &&
      row.n === filter.n &&
      (filter.m === undefined || row.m === filter.m),
  );
  if (rows.length === 0) {
    throw new SelectionError(
      `no rounds selected for n=${filter.n}` +
        (filter.m === undefined ? "" : ` m=${filter.m}`),
    );
  }
  rows.sort((a, b) => a.round - b.round);
  const series: Series[] = VARIANTS.map((variant) => ({
    label: variant,
    points: rows
      .filter((row) => row.sizes[variant] >= 0)
      .map((row) => ({ x: row.round, y: row.sizes[variant] })),
  }));
  return {
    title: `absolute sizes, n=${filter.n}` +
      (filter.m === undefined ? "" : `, m=${filter.m}`),
    xLabel: "announcements",
    yLabel: "number of nodes",
    series,
    markers: [],
    xDomain: [],
  };
}

export function relativeChart(table: BenchTable): ChartData {
  // with an m column present only the fully-parameterized diagonal rows
  // (m = n) are comparable across instance sizes
  const rows = table.rows
    .filter((row) => row.isAverage && (!table.hasM || row.m === row.n))
    .sort((a, b) => a.n - b.n);
  if (rows.length === 0) {
    throw new SelectionError("no average rows in the table");
  }
  const series: Series[] = VARIANTS.map((variant) => ({
    label: variant,
    points: rows
      .filter((row) => row.sizes.BDD > 0 && row.sizes[variant] >= 0)
      .map((row) => ({
        x: row.n,
        y: ((row.sizes[variant] - row.sizes.BDD) / row.sizes.BDD) * 100,
      })),
  }));
  const xs = rows.map((row) => row.n);
  const markers = powerOfTwoMarkers(Math.min(...xs), Math.max(...xs));
  return {
    title: "relative average sizes (BDD = 0)",
    xLabel: "instance size",
    yLabel: "relative difference (%)",
    series,
    markers,
    xDomain: markers.length > 0 ? [markers[0]] : [],
  };
}

/**
 * Dashed markers at powers of two, for sweeps over bit-encoded bounds
 * (the block widths of the encoding grow just above each power of two).
 * Only sweeps reaching 64 get markers, so agent-count charts stay clean;
 * 64 is always marked for such sweeps even when the sweep starts above it.
 */
export function powerOfTwoMarkers(xMin: number, xMax: number): number[] {
  if (xMax < 64) return [];
  const markers: number[] = [];
  for (let p = 64; p <= xMax; p *= 2) {
    markers.push(p);
  }
  return markers;
}
