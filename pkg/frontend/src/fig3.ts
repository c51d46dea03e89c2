/** Bloch-sphere dependence figure: fidelity along a meridian and around
 * the equator, side by side.
 *
 * Each input is a sweep.csv from the bloch sweep kinds; the sibling .json
 * record, when present, supplies the coupling for the caption and lets the
 * two inputs be cross-checked (a mismatch gets a warning banner, not an
 * error, so stale pairings remain visible instead of silently plausible).
 *
 * Usage: fig3 <meridian.csv> [equator.csv] <out[.svg|.png]>
 */

import { basename } from "node:path";
import { existsSync } from "node:fs";

import {
  parseCsv,
  requireColumns,
  optionalColumn,
  numericColumn,
  finitePairs,
} from "./csv.js";
import { newScene, Scene } from "./scene.js";
import {
  COLORS,
  Panel,
  Tick,
  drawBanner,
  drawCaption,
  niceTicks,
  sourcesCaption,
} from "./chart.js";
import {
  gRatioOf,
  isDirectRun,
  readJson,
  readText,
  runMain,
  sidecarJsonPath,
  writeFigure,
} from "./figio.js";

const PI = Math.PI;

const MERIDIAN_TICKS: Tick[] = [
  { v: 0, label: "0" },
  { v: PI / 4, label: "π/4" },
  { v: PI / 2, label: "π/2" },
  { v: (3 * PI) / 4, label: "3π/4" },
  { v: PI, label: "π" },
];

const EQUATOR_TICKS: Tick[] = [
  { v: 0, label: "0" },
  { v: PI / 2, label: "π/2" },
  { v: PI, label: "π" },
  { v: (3 * PI) / 2, label: "3π/2" },
  { v: 2 * PI, label: "2π" },
];

interface Series {
  x: number[];
  y: number[];
  g: string | null;
  name: string;
}

function loadSweep(path: string): Series {
  const name = basename(path);
  const table = parseCsv(readText(path), name);
  const col = requireColumns(table, ["parameter", "f2_mean"], name);
  const errCol = optionalColumn(table, "error");
  const xsAll = numericColumn(table, col["parameter"]!);
  const ysAll = numericColumn(table, col["f2_mean"]!);
  const xs: number[] = [];
  const ys: number[] = [];
  for (let i = 0; i < table.rows.length; i++) {
    if (errCol !== null && table.rows[i]![errCol] !== "") continue;
    xs.push(xsAll[i]!);
    ys.push(ysAll[i]!);
  }
  const clean = finitePairs(xs, ys);

  const sidecar = sidecarJsonPath(path);
  const g = existsSync(sidecar) ? gRatioOf(readJson(sidecar)) : null;
  return { x: clean.x, y: clean.y, g, name };
}

export function buildFig3(
  meridianPath: string,
  equatorPath: string | null,
): Scene {
  const meridian = loadSweep(meridianPath);
  const equator = equatorPath === null ? null : loadSweep(equatorPath);

  const scene = newScene(960, 520);
  scene.prims.push({ kind: "rect", x: 0, y: 0, w: 960, h: 520, fill: "#ffffff" });

  // shared fidelity range so the two panels compare at a glance
  const ys = meridian.y.concat(equator ? equator.y : []);
  const lo = Math.min(...ys);
  const hi = Math.max(...ys);
  const pad = Math.max(0.1 * (hi - lo), 0.005);
  const ya = { lo: lo - pad, hi: Math.min(1.002, hi + pad) };
  const yticks = niceTicks(ya.lo, ya.hi, 5);

  const left = new Panel(
    scene,
    { x: 70, y: 70, w: 380, h: 330 },
    { lo: 0, hi: PI },
    ya,
  );
  left.frame();
  left.xTicks(MERIDIAN_TICKS, { grid: true });
  left.yTicks(yticks, { grid: true });
  left.xLabel("polar angle θ (φ = 0)");
  left.yLabel("mean F²");
  left.title("meridian");
  left.line(meridian.x, meridian.y, COLORS.overlap, 2);
  left.markers(meridian.x, meridian.y, COLORS.overlap, 3);

  const right = new Panel(
    scene,
    { x: 540, y: 70, w: 380, h: 330 },
    { lo: 0, hi: 2 * PI },
    ya,
  );
  right.frame();
  right.title("equator");
  if (equator) {
    right.xTicks(EQUATOR_TICKS, { grid: true });
    right.yTicks(yticks, { grid: true });
    right.xLabel("azimuth φ (θ = π/2)");
    right.line(equator.x, equator.y, COLORS.occupation, 2);
    right.markers(equator.x, equator.y, COLORS.occupation, 3);
  } else {
    right.annotate("equator sweep missing");
  }

  if (meridian.g !== null && equator?.g != null && meridian.g !== equator.g) {
    drawBanner(
      scene,
      `warning: coupling differs between inputs (g/ħω0 = ${meridian.g} vs ${equator.g})`,
    );
  }

  const files = [meridian.name].concat(equator ? [equator.name] : []);
  drawCaption(scene, sourcesCaption(files, meridian.g ?? "unknown"));
  return scene;
}

export function mainFig3(args: string[]): void {
  const pos = args.filter((a) => !a.startsWith("--"));
  if (pos.length !== 2 && pos.length !== 3) {
    throw new Error("usage: fig3 <meridian.csv> [equator.csv] <out[.svg|.png]>");
  }
  const scene =
    pos.length === 3
      ? buildFig3(pos[0]!, pos[1]!)
      : buildFig3(pos[0]!, null);
  const out = writeFigure(pos[pos.length - 1]!, scene);
  console.log(`wrote ${out.svg} and ${out.png}`);
}

if (isDirectRun(import.meta.url)) {
  runMain(mainFig3);
}
