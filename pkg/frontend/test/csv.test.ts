import { describe, expect, it } from "vitest";

import {
  CsvError,
  finitePairs,
  numericColumn,
  optionalColumn,
  parseCsv,
  requireColumns,
} from "../src/csv.js";

describe("parseCsv", () => {
  it("splits header and rows", () => {
    const t = parseCsv("a,b\n1,2\n3,4\n", "x.csv");
    expect(t.columns).toEqual(["a", "b"]);
    expect(t.rows).toEqual([
      ["1", "2"],
      ["3", "4"],
    ]);
  });

  it("tolerates CRLF and a missing final newline", () => {
    const t = parseCsv("a,b\r\n1,2", "x.csv");
    expect(t.rows).toEqual([["1", "2"]]);
  });

  it("rejects a zero-byte file", () => {
    expect(() => parseCsv("", "x.csv")).toThrow(CsvError);
    expect(() => parseCsv("", "x.csv")).toThrow(/empty CSV/);
  });

  it("rejects header-only input", () => {
    expect(() => parseCsv("a,b\n", "x.csv")).toThrow(/no data rows/);
  });

  it("rejects ragged rows with the line number", () => {
    expect(() => parseCsv("a,b\n1,2\n1\n", "x.csv")).toThrow(/row 3/);
  });
});

describe("requireColumns", () => {
  const table = parseCsv("t_ns,s,f2\n0,0.4,1\n", "traj.csv");

  it("maps names to indices", () => {
    expect(requireColumns(table, ["f2", "t_ns"], "traj.csv")).toEqual({
      f2: 2,
      t_ns: 0,
    });
  });

  it("names the missing column in the error", () => {
    expect(() =>
      requireColumns(table, ["t_ns", "stored_occupation"], "traj.csv"),
    ).toThrow('traj.csv: missing column "stored_occupation"');
  });
});

describe("numeric helpers", () => {
  it("parses python float reprs including nan and exponents", () => {
    const t = parseCsv("v\n1e-09\nnan\n0.5\n", "x.csv");
    const v = numericColumn(t, 0);
    expect(v[0]).toBeCloseTo(1e-9, 15);
    expect(Number.isNaN(v[1]!)).toBe(true);
    expect(v[2]).toBe(0.5);
  });

  it("optionalColumn returns null when absent", () => {
    const t = parseCsv("a\n1\n", "x.csv");
    expect(optionalColumn(t, "a")).toBe(0);
    expect(optionalColumn(t, "b")).toBeNull();
  });

  it("finitePairs drops nan rows and keeps order", () => {
    const got = finitePairs([1, 2, 3], [10, NaN, 30]);
    expect(got).toEqual({ x: [1, 3], y: [10, 30] });
  });
});
