import { existsSync, readFileSync } from "node:fs";
import { join } from "node:path";
import { describe, expect, it } from "vitest";

import { buildFig1, mainFig1 } from "../src/fig1.js";
import { renderSvg } from "../src/svg.js";
import { fixture, resultJson, tmpDir, writeTmp } from "./helpers.js";

const TRAJ = fixture("fig1", "trajectory.csv");
const RESULT = fixture("fig1", "result.json");

describe("fig1 from the reference run", () => {
  it("draws all three curves, the inset, and the sources caption", () => {
    const scene = buildFig1({
      trajectoryPath: TRAJ,
      resultPath: RESULT,
      inset: true,
    });
    const svg = renderSvg(scene);
    expect(svg).toContain("stroke-dasharray"); // bias and occupation styles
    expect(svg).toContain("final window"); // the inset
    expect(svg).toContain("sources: trajectory.csv, result.json");
    expect(svg).toContain("g/ħω0 = 0.05");
  });

  it("omits the inset when asked", () => {
    const scene = buildFig1({
      trajectoryPath: TRAJ,
      resultPath: RESULT,
      inset: false,
    });
    expect(renderSvg(scene)).not.toContain("final window");
  });

  it("writes byte-identical SVG on repeated invocations", () => {
    const out = tmpDir();
    mainFig1([TRAJ, RESULT, join(out, "a")]);
    mainFig1([TRAJ, RESULT, join(out, "b.svg")]);
    const a = readFileSync(join(out, "a.svg"));
    const b = readFileSync(join(out, "b.svg"));
    expect(a.equals(b)).toBe(true);
    expect(existsSync(join(out, "a.png"))).toBe(true);
    expect(existsSync(join(out, "b.png"))).toBe(true);
  });
});

describe("fig1 input validation", () => {
  it("names the missing column", () => {
    const dir = tmpDir();
    const traj = writeTmp(dir, "traj.csv", "t_ns,s,stored_occupation\n0,0.4,0\n");
    const res = writeTmp(dir, "result.json", resultJson(0.05, 80, [59, 80]));
    expect(() =>
      buildFig1({ trajectoryPath: traj, resultPath: res, inset: true }),
    ).toThrow('traj.csv: missing column "f2"');
  });

  it("rejects an empty CSV and writes nothing", () => {
    const dir = tmpDir();
    const traj = writeTmp(dir, "traj.csv", "");
    const res = writeTmp(dir, "result.json", resultJson(0.05, 80, [59, 80]));
    const out = join(dir, "fig");
    expect(() => mainFig1([traj, res, out])).toThrow(/empty CSV/);
    expect(existsSync(out + ".svg")).toBe(false);
    expect(existsSync(out + ".png")).toBe(false);
  });

  it("rejects a wrong argument count with usage", () => {
    expect(() => mainFig1([TRAJ])).toThrow(/usage: fig1/);
  });
});
