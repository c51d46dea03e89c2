/** Minimal CSV reader for the simulator's output tables.
 *
 * The producer writes plain comma-separated text with no quoting (error
 * messages have their commas replaced before they reach the file), so a
 * naive line/field split is exact, not an approximation.
 */

export class CsvError extends Error {}

export interface Table {
  columns: string[];
  rows: string[][];
}

export function parseCsv(text: string, source: string): Table {
  const lines = text.split(/\r?\n/).filter((ln) => ln.length > 0);
  if (lines.length === 0) {
    throw new CsvError(`${source}: empty CSV, nothing to plot`);
  }
  const header = lines[0]!;
  const columns = header.split(",");
  const rows: string[][] = [];
  for (let i = 1; i < lines.length; i++) {
    const fields = lines[i]!.split(",");
    if (fields.length !== columns.length) {
      throw new CsvError(
        `${source}: row ${i + 1} has ${fields.length} fields, header has ${columns.length}`,
      );
    }
    rows.push(fields);
  }
  if (rows.length === 0) {
    throw new CsvError(`${source}: empty CSV, header but no data rows`);
  }
  return { columns, rows };
}

/** Resolve required column names to indices; name the first missing one. */
export function requireColumns(
  table: Table,
  names: string[],
  source: string,
): Record<string, number> {
  const out: Record<string, number> = {};
  for (const name of names) {
    const idx = table.columns.indexOf(name);
    if (idx < 0) {
      throw new CsvError(`${source}: missing column "${name}"`);
    }
    out[name] = idx;
  }
  return out;
}

export function optionalColumn(table: Table, name: string): number | null {
  const idx = table.columns.indexOf(name);
  return idx < 0 ? null : idx;
}

export function numericColumn(table: Table, index: number): number[] {
  return table.rows.map((r) => Number(r[index]));
}

/** Drop pairs whose y is not finite (failed sweep points carry nan). */
export function finitePairs(
  xs: number[],
  ys: number[],
): { x: number[]; y: number[] } {
  const x: number[] = [];
  const y: number[] = [];
  for (let i = 0; i < ys.length; i++) {
    if (Number.isFinite(xs[i]) && Number.isFinite(ys[i])) {
      x.push(xs[i]!);
      y.push(ys[i]!);
    }
  }
  return { x, y };
}
