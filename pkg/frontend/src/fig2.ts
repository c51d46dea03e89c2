/** Coupling-sweep figure: fidelity and gate time against coupling strength.
 *
 * Two stacked panels from one sweep.csv: mean squared fidelity in percent
 * (with a min-max band when the bounds columns are usable) and the swap
 * gate time in nanoseconds, both on a log coupling axis.
 *
 * Usage: fig2 <sweep.csv> <out[.svg|.png]>
 */

import { basename } from "node:path";

import {
  parseCsv,
  requireColumns,
  optionalColumn,
  numericColumn,
} from "./csv.js";
import { newScene, Scene } from "./scene.js";
import {
  COLORS,
  Panel,
  drawCaption,
  fmtNum,
  logTicks,
  niceTicks,
  sourcesCaption,
} from "./chart.js";
import { isDirectRun, readText, runMain, writeFigure } from "./figio.js";

export function buildFig2(sweepPath: string): Scene {
  const name = basename(sweepPath);
  const table = parseCsv(readText(sweepPath), name);
  const col = requireColumns(
    table,
    ["parameter", "f2_mean", "gate_time_ns"],
    name,
  );
  const errCol = optionalColumn(table, "error");
  const minCol = optionalColumn(table, "f2_min");
  const maxCol = optionalColumn(table, "f2_max");

  const ok = (i: number): boolean =>
    errCol === null || table.rows[i]![errCol] === "";

  const g: number[] = [];
  const f2: number[] = [];
  const gate: number[] = [];
  const f2lo: number[] = [];
  const f2hi: number[] = [];
  const allG = numericColumn(table, col["parameter"]!);
  const allF2 = numericColumn(table, col["f2_mean"]!);
  const allGate = numericColumn(table, col["gate_time_ns"]!);
  const allLo = minCol === null ? null : numericColumn(table, minCol);
  const allHi = maxCol === null ? null : numericColumn(table, maxCol);
  let failed = 0;
  for (let i = 0; i < table.rows.length; i++) {
    if (!ok(i) || !Number.isFinite(allF2[i]!)) {
      failed++;
      continue;
    }
    g.push(allG[i]!);
    f2.push(allF2[i]! * 100);
    gate.push(allGate[i]!);
    if (allLo && allHi) {
      f2lo.push(allLo[i]! * 100);
      f2hi.push(allHi[i]! * 100);
    }
  }
  if (g.length === 0) {
    throw new Error(`${name}: no usable rows, every point failed`);
  }
  const haveBand =
    f2lo.length === g.length && f2lo.every((v) => Number.isFinite(v)) &&
    f2hi.every((v) => Number.isFinite(v));

  const scene = newScene(960, 680);
  scene.prims.push({ kind: "rect", x: 0, y: 0, w: 960, h: 680, fill: "#ffffff" });

  const xa = {
    lo: Math.min(...g) / 1.15,
    hi: Math.max(...g) * 1.15,
    log: true,
  };
  const xticks = logTicks(xa.lo, xa.hi);

  // upper panel: fidelity in percent
  const fLo = haveBand ? Math.min(...f2lo) : Math.min(...f2);
  const fHi = haveBand ? Math.max(...f2hi) : Math.max(...f2);
  const fPad = Math.max(0.08 * (fHi - fLo), 0.5);
  const upper = new Panel(
    scene,
    { x: 80, y: 56, w: 820, h: 240 },
    xa,
    { lo: fLo - fPad, hi: fHi + fPad },
  );
  upper.frame();
  upper.xTicks(xticks, { grid: true });
  upper.yTicks(niceTicks(fLo - fPad, fHi + fPad, 5), { grid: true });
  upper.yLabel("mean F² (%)");
  upper.title("memory fidelity vs coupling");
  if (haveBand) {
    upper.band(g, f2lo, f2hi, COLORS.overlap, 0.18);
  }
  upper.line(g, f2, COLORS.overlap, 2);
  upper.markers(g, f2, COLORS.overlap, 3.5);
  if (failed > 0) {
    scene.prims.push({
      kind: "text",
      x: 900,
      y: 48,
      s: `${failed} failed point${failed === 1 ? "" : "s"} omitted`,
      size: 12,
      anchor: "end",
      fill: COLORS.warn,
    });
  }

  // lower panel: swap gate time, log-log so the 1/g law reads as a line
  const ya = {
    lo: Math.min(...gate) / 1.3,
    hi: Math.max(...gate) * 1.3,
    log: true,
  };
  const lower = new Panel(scene, { x: 80, y: 360, w: 820, h: 240 }, xa, ya);
  lower.frame();
  lower.xTicks(xticks, { grid: true });
  lower.yTicks(logTicks(ya.lo, ya.hi), { grid: true });
  lower.xLabel("coupling g/ħω0");
  lower.yLabel("gate time (ns)");
  lower.line(g, gate, COLORS.occupation, 2);
  lower.markers(g, gate, COLORS.occupation, 3.5);

  const gText =
    g.length === 1
      ? fmtNum(g[0]!)
      : `${fmtNum(Math.min(...g))} to ${fmtNum(Math.max(...g))} (swept)`;
  drawCaption(scene, sourcesCaption([name], gText));
  return scene;
}

export function mainFig2(args: string[]): void {
  const pos = args.filter((a) => !a.startsWith("--"));
  if (pos.length !== 2) {
    throw new Error("usage: fig2 <sweep.csv> <out[.svg|.png]>");
  }
  const scene = buildFig2(pos[0]!);
  const out = writeFigure(pos[1]!, scene);
  console.log(`wrote ${out.svg} and ${out.png}`);
}

if (isDirectRun(import.meta.url)) {
  runMain(mainFig2);
}
