/** Memory-cycle trace figure.
 *
 * Reads trajectory.csv and result.json from the simulate command and draws
 * the overlap-squared curve (solid), the stored-state occupation (dotted)
 * and the bias waveform (dashed, right-hand scale), with an inset expanding
 * the final sampling window where the fidelity statistics are taken.
 *
 * Usage: fig1 <trajectory.csv> <result.json> <out[.svg|.png]> [--no-inset]
 */

import { basename } from "node:path";

import { parseCsv, requireColumns, numericColumn } from "./csv.js";
import { newScene, Scene } from "./scene.js";
import {
  COLORS,
  Panel,
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
  writeFigure,
} from "./figio.js";

export interface Fig1Inputs {
  trajectoryPath: string;
  resultPath: string;
  inset: boolean;
}

interface ResultRecord {
  schedule?: { window_ns?: [number, number]; total_ns?: number };
}

export function buildFig1(inputs: Fig1Inputs): Scene {
  const trajName = basename(inputs.trajectoryPath);
  const table = parseCsv(readText(inputs.trajectoryPath), trajName);
  const col = requireColumns(
    table,
    ["t_ns", "s", "f2", "stored_occupation"],
    trajName,
  );
  const t = numericColumn(table, col["t_ns"]!);
  const s = numericColumn(table, col["s"]!);
  const f2 = numericColumn(table, col["f2"]!);
  const occ = numericColumn(table, col["stored_occupation"]!);

  const record = readJson(inputs.resultPath) as ResultRecord;
  const tEnd = record.schedule?.total_ns ?? Math.max(...t);
  const window = record.schedule?.window_ns ?? [0.75 * tEnd, tEnd];

  const scene = newScene(960, 640);
  scene.prims.push({ kind: "rect", x: 0, y: 0, w: 960, h: 640, fill: "#ffffff" });

  const panel = new Panel(
    scene,
    { x: 70, y: 56, w: 800, h: 470 },
    { lo: 0, hi: tEnd },
    { lo: 0, hi: 1.02 },
  );
  const biasAxis = { lo: 0, hi: Math.ceil(Math.max(...s) * 12.5) / 10 };

  panel.frame();
  panel.xTicks(niceTicks(0, tEnd, 8), { grid: true });
  panel.yTicks(niceTicks(0, 1, 5), { grid: true });
  panel.yTicksRight(niceTicks(0, biasAxis.hi, 4), biasAxis, COLORS.bias);
  panel.xLabel("time (ns)");
  panel.yLabel("probability");
  panel.yLabelRight("bias s", COLORS.bias);
  panel.title("memory cycle: store, park, retrieve");

  panel.line(t, s, COLORS.bias, 1.5, [7, 4], biasAxis);
  panel.line(t, occ, COLORS.occupation, 2, [2, 3]);
  panel.line(t, f2, COLORS.overlap, 2);

  // the legend sits in the corridor between the retrieved-overlap plateau
  // and the parked bias line; the backing rect keeps dashes off the text
  scene.prims.push({
    kind: "rect",
    x: panel.box.x + 586,
    y: panel.box.y + 124,
    w: 210,
    h: 60,
    fill: "#ffffff",
  });
  panel.legend(
    [
      { label: "F² (overlap)", color: COLORS.overlap },
      { label: "occupation", color: COLORS.occupation, dash: [2, 3] },
      { label: "bias s(t)", color: COLORS.bias, dash: [7, 4] },
    ],
    { x: 594, y: 142 },
  );

  if (inputs.inset) {
    drawInset(scene, panel, t, f2, window);
  }

  const g = gRatioOf(record) ?? "unknown";
  drawCaption(
    scene,
    sourcesCaption([trajName, basename(inputs.resultPath)], g),
  );
  return scene;
}

function drawInset(
  scene: Scene,
  panel: Panel,
  t: number[],
  f2: number[],
  window: [number, number],
): void {
  const ti: number[] = [];
  const fi: number[] = [];
  for (let i = 0; i < t.length; i++) {
    if (t[i]! >= window[0] && t[i]! <= window[1]) {
      ti.push(t[i]!);
      fi.push(f2[i]!);
    }
  }
  if (ti.length < 2) return;

  const lo = Math.min(...fi);
  const hi = Math.max(...fi);
  const pad = Math.max(0.25 * (hi - lo), 1e-4);
  const box = {
    x: panel.box.x + 0.42 * panel.box.w,
    y: panel.box.y + 0.55 * panel.box.h,
    w: 0.33 * panel.box.w,
    h: 0.34 * panel.box.h,
  };
  const inset = new Panel(
    scene,
    box,
    { lo: window[0], hi: window[1] },
    { lo: lo - pad, hi: hi + pad },
  );
  inset.background();
  inset.frame();
  inset.xTicks(niceTicks(window[0], window[1], 3), { size: 10 });
  inset.yTicks(niceTicks(lo - pad, hi + pad, 3), { size: 10 });
  inset.line(ti, fi, COLORS.overlap, 1.5);
  scene.prims.push({
    kind: "text",
    x: box.x + box.w / 2,
    y: box.y - 6,
    s: "final window",
    size: 11,
    anchor: "middle",
    fill: COLORS.text,
  });
}

export function mainFig1(args: string[]): void {
  const inset = !args.includes("--no-inset");
  const pos = args.filter((a) => !a.startsWith("--"));
  if (pos.length !== 3) {
    throw new Error(
      "usage: fig1 <trajectory.csv> <result.json> <out[.svg|.png]> [--no-inset]",
    );
  }
  const scene = buildFig1({
    trajectoryPath: pos[0]!,
    resultPath: pos[1]!,
    inset,
  });
  const out = writeFigure(pos[2]!, scene);
  console.log(`wrote ${out.svg} and ${out.png}`);
}

if (isDirectRun(import.meta.url)) {
  runMain(mainFig1);
}
