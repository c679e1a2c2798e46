import { describe, expect, it } from "vitest";
import { CsvError, columnIndex, numberColumn, parseCsv, requiredNumberColumn, stringColumn } from "../src/csv.js";

const SAMPLE = `# eta=0.2 s=0.8 omega_c=10 sweep=eta
param,E_b,Z,exists
0.05,,,false
0.2,-0.79192853370948679,0.73377991327247927,true
`;

describe("parseCsv", () => {
  it("splits comment, header, and rows", () => {
    const table = parseCsv(SAMPLE, "spectrum.csv");
    expect(table.comment).toBe("eta=0.2 s=0.8 omega_c=10 sweep=eta");
    expect(table.columns).toEqual(["param", "E_b", "Z", "exists"]);
    expect(table.rows).toHaveLength(2);
    expect(table.rows[0]).toEqual(["0.05", "", "", "false"]);
  });

  it("tolerates CRLF and blank lines", () => {
    const table = parseCsv("a,b\r\n1,2\r\n\r\n3,4\r\n", "x.csv");
    expect(table.rows).toEqual([
      ["1", "2"],
      ["3", "4"],
    ]);
  });

  it("rejects a file with no header", () => {
    expect(() => parseCsv("", "x.csv")).toThrow(/empty CSV/);
    expect(() => parseCsv("# only a comment\n", "x.csv")).toThrow(/no header/);
  });

  it("rejects a header-only file", () => {
    expect(() => parseCsv("a,b\n", "x.csv")).toThrow(/no data rows/);
  });

  it("rejects ragged rows with the line number", () => {
    expect(() => parseCsv("a,b\n1,2,3\n", "x.csv")).toThrow(/line 2 has 3 cells/);
  });
});

describe("column accessors", () => {
  const table = parseCsv(SAMPLE, "spectrum.csv");

  it("finds columns by name", () => {
    expect(columnIndex(table, "Z")).toBe(2);
  });

  it("lists available columns when one is missing", () => {
    try {
      columnIndex(table, "f_minus");
      expect.unreachable();
    } catch (err) {
      expect(err).toBeInstanceOf(CsvError);
      expect((err as Error).message).toContain('missing column "f_minus"');
      expect((err as Error).message).toContain("param, E_b, Z, exists");
    }
  });

  it("maps empty cells to null", () => {
    expect(numberColumn(table, "E_b")).toEqual([null, -0.79192853370948679]);
  });

  it("rejects non-numeric cells", () => {
    expect(() => numberColumn(table, "exists")).toThrow(/not a number/);
  });

  it("requiredNumberColumn rejects empty cells", () => {
    expect(() => requiredNumberColumn(table, "Z")).toThrow(/empty cell at data row 1/);
    expect(requiredNumberColumn(table, "param")).toEqual([0.05, 0.2]);
  });

  it("stringColumn returns raw cells", () => {
    expect(stringColumn(table, "exists")).toEqual(["false", "true"]);
  });
});
