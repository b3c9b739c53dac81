#!/usr/bin/env node
/**
 * plotgen: render a benchmark .dat table as an SVG chart.
 *
 *   plotgen --in mc.dat --kind absolute --n 20 --m 20 --out mc20.svg
 *   plotgen --in sap.dat --kind relative --out sap-rel.svg
 */

import { readFileSync, writeFileSync } from "node:fs";
import { pathToFileURL } from "node:url";

import { absoluteChart, relativeChart, SelectionError } from "./chart.js";
import { DatError, parseDat } from "./dat.js";
import { renderSvg } from "./svg.js";

const USAGE =
  "usage: plotgen --in FILE.dat --kind absolute|relative [--n N] [--m M] --out FILE.svg";

interface Args {
  input: string;
  kind: "absolute" | "relative";
  n?: number;
  m?: number;
  out: string;
}

function parseArgs(argv: string[]): Args {
  const values = new Map<string, string>();
  for (let i = 0; i < argv.length; i += 2) {
    const flag = argv[i];
    const value = argv[i + 1];
    if (!flag.startsWith("--") || value === undefined) {
      throw new Error(`bad argument ${flag}`);
    }
    values.set(flag.slice(2), value);
  }
  const known = new Set(["in", "kind", "n", "m", "out"]);
  for (const key of values.keys()) {
    if (!known.has(key)) {
      throw new Error(`unknown option --${key}`);
    }
  }
  const input = values.get("in");
  const kind = values.get("kind");
  const out = values.get("out");
  if (!input || !out || (kind !== "absolute" && kind !== "relative")) {
    throw new Error("missing --in, --out or a valid --kind");
  }
  const intOf = (key: string): number | undefined => {
    const raw = values.get(key);
    if (raw === undefined) return undefined;
    const value = Number(raw);
    if (!Number.isInteger(value)) {
      throw new Error(`--${key} must be an integer, got ${raw}`);
    }
    return value;
  };
  return { input, kind, n: intOf("n"), m: intOf("m"), out };
}

export function run(argv: string[]): number {
  let args: Args;
  try {
    args = parseArgs(argv);
  } catch (err) {
    console.error(`error: ${(err as Error).message}`);
    console.error(USAGE);
    return 1;
  }
  try {
    const table = parseDat(readFileSync(args.input, "utf8"));
    let chart;
    if (args.kind === "absolute") {
      if (args.n === undefined) {
        throw new SelectionError("absolute charts need --n (and --m for tables with m)");
      }
      chart = absoluteChart(table, { n: args.n, m: args.m });
    } else {
      chart = relativeChart(table);
    }
    writeFileSync(args.out, renderSvg(chart));
    console.log(`wrote ${args.out}`);
    return 0;
  } catch (err) {
    if (err instanceof DatError || err instanceof SelectionError || err instanceof Error) {
      console.error(`error: ${(err as Error).message}`);
      return 1;
    }
    throw err;
  }
}

const invokedDirectly =
  process.argv[1] !== undefined &&
  import.meta.url === pathToFileURL(process.argv[1]).href;

if (invokedDirectly) {
  process.exit(run(process.argv.slice(2)));
}
