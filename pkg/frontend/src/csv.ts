import { readFileSync } from "node:fs";

/** Comma-separated table as written by the qillum CLI: optional leading
 *  '#' comment lines carrying the parameter set, one header row, then
 *  data rows. No quoting; cells never contain commas. */
export interface CsvTable {
  path: string;
  comment: string | null;
  columns: string[];
  rows: string[][];
}

export class CsvError extends Error {}

export function parseCsv(text: string, path = "<string>"): CsvTable {
  const lines = text.split(/\r?\n/);
  let comment: string | null = null;
  let columns: string[] | null = null;
  const rows: string[][] = [];
  for (let i = 0; i < lines.length; i++) {
    const line = lines[i];
    if (line === "") continue;
    if (line.startsWith("#")) {
      if (comment === null) comment = line.replace(/^#\s?/, "");
      continue;
    }
    const cells = line.split(",");
    if (columns === null) {
      columns = cells;
      continue;
    }
    if (cells.length !== columns.length) {
      throw new CsvError(
        `${path}: line ${i + 1} has ${cells.length} cells, expected ${columns.length}`
      );
    }
    rows.push(cells);
  }
  if (columns === null) {
    throw new CsvError(`empty CSV: ${path} has no header row`);
  }
  if (rows.length === 0) {
    throw new CsvError(`empty CSV: ${path} has no data rows`);
  }
  return { path, comment, columns, rows };
}

export function readCsv(path: string): CsvTable {
  let text: string;
  try {
    text = readFileSync(path, "utf8");
  } catch {
    throw new CsvError(`missing input file: ${path}`);
  }
  return parseCsv(text, path);
}

export function columnIndex(table: CsvTable, name: string): number {
  const idx = table.columns.indexOf(name);
  if (idx < 0) {
    throw new CsvError(
      `${table.path}: missing column "${name}"; available columns: ` +
        table.columns.join(", ")
    );
  }
  return idx;
}

/** Numeric column; empty cells become null. */
export function numberColumn(table: CsvTable, name: string): (number | null)[] {
  const idx = columnIndex(table, name);
  return table.rows.map((row, i) => {
    const cell = row[idx];
    if (cell === "") return null;
    const v = Number(cell);
    if (!Number.isFinite(v)) {
      throw new CsvError(
        `${table.path}: column "${name}" data row ${i + 1} is not a number: "${cell}"`
      );
    }
    return v;
  });
}

/** Numeric column that must be fully populated. */
export function requiredNumberColumn(table: CsvTable, name: string): number[] {
  const values = numberColumn(table, name);
  values.forEach((v, i) => {
    if (v === null) {
      throw new CsvError(
        `${table.path}: column "${name}" has an empty cell at data row ${i + 1}`
      );
    }
  });
  return values as number[];
}

export function stringColumn(table: CsvTable, name: string): string[] {
  const idx = columnIndex(table, name);
  return table.rows.map((row) => row[idx]);
}
