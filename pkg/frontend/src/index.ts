export { parseDat, DatError, VARIANTS } from "./dat.js";
export type { BenchRow, BenchTable, Variant } from "./dat.js";
export {
  absoluteChart,
  relativeChart,
  powerOfTwoMarkers,
  SelectionError,
} from "./chart.js";
export type { ChartData, Point, Series, AbsoluteFilter } from "./chart.js";
export { renderSvg } from "./svg.js";
export { run } from "./cli.js";
