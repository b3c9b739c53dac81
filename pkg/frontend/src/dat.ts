/**
 * Parser for benchmark `.dat` tables.
 *
 * Whitespace-separated with a header row, e.g.
 * `n m round BDD BDDc T0 T1 E0 E1` (the `m` column is optional).  A row
 * with round -1 carries the per-instance averages over all rounds; a cell
 * of -1 marks a variant that was not measured.
 */

export const VARIANTS = ["BDD", "BDDc", "T0", "T1", "E0", "E1"] as const;
export type Variant = (typeof VARIANTS)[number];

export interface BenchRow {
  n: number;
  m?: number;
  round: number;
  isAverage: boolean;
  sizes: Record<Variant, number>;
}

export interface BenchTable {
  hasM: boolean;
  rows: BenchRow[];
}

export class DatError extends Error {}

export function parseDat(text: string): BenchTable {
  const lines = text.split(/\r?\n/);
  let lineNo = 0;
  while (lineNo < lines.length && lines[lineNo].trim() === "") lineNo++;
  if (lineNo === lines.length) {
    throw new DatError("empty input: missing header line");
  }
  const header = lines[lineNo].trim().split(/\s+/);
  const headerLine = lineNo + 1;
  const required = ["n", "round", ...VARIANTS];
  for (const column of required) {
    if (!header.includes(column)) {
      throw new DatError(
        `line ${headerLine}: header is missing the ${column} column`,
      );
    }
  }
  const index = new Map(header.map((name, i) => [name, i]));
  const hasM = index.has("m");
  const rows: BenchRow[] = [];
  for (let i = lineNo + 1; i < lines.length; i++) {
    const line = lines[i].trim();
    if (line === "") continue;
    const cells = line.split(/\s+/);
    if (cells.length !== header.length) {
      throw new DatError(
        `line ${i + 1}: expected ${header.length} fields, got ${cells.length}`,
      );
    }
    const numbers = cells.map((cell) => {
      const value = Number(cell);
      if (!Number.isInteger(value)) {
        throw new DatError(`line ${i + 1}: ${JSON.stringify(cell)} is not an integer`);
      }
      return value;
    });
    const round = numbers[index.get("round")!];
    const sizes = {} as Record<Variant, number>;
    for (const variant of VARIANTS) {
      sizes[variant] = numbers[index.get(variant)!];
    }
    rows.push({
      n: numbers[index.get("n")!],
      ...(hasM ? { m: numbers[index.get("m")!] } : {}),
      round,
      isAverage: round === -1,
      sizes,
    });
  }
  return { hasM, rows };
}
