/** File plumbing shared by the figure entry points. */

import { existsSync, mkdirSync, readFileSync, writeFileSync } from "node:fs";
import { dirname } from "node:path";
import { pathToFileURL } from "node:url";

import { Scene } from "./scene.js";
import { renderSvg } from "./svg.js";
import { renderPng } from "./raster.js";

export function readText(path: string): string {
  if (!existsSync(path)) {
    throw new Error(`input file not found: ${path}`);
  }
  return readFileSync(path, "utf8");
}

export function readJson(path: string): unknown {
  return JSON.parse(readText(path));
}

/** Coupling ratio from a result/sweep record, as its caption string. */
export function gRatioOf(record: unknown): string | null {
  const r = record as { config?: { device?: { g_ratio?: unknown } } };
  const g = r?.config?.device?.g_ratio;
  return typeof g === "number" && Number.isFinite(g) ? String(g) : null;
}

/** The sweep command writes table.csv next to table.json; map one to the other. */
export function sidecarJsonPath(csvPath: string): string {
  return csvPath.replace(/\.csv$/i, "") + ".json";
}

function stripExt(p: string): string {
  return p.replace(/\.(svg|png)$/i, "");
}

/** Write both output formats; returns the paths actually written. */
export function writeFigure(
  outPath: string,
  scene: Scene,
): { svg: string; png: string } {
  const base = stripExt(outPath);
  const dir = dirname(base);
  if (dir && dir !== ".") {
    mkdirSync(dir, { recursive: true });
  }
  const svg = base + ".svg";
  const png = base + ".png";
  writeFileSync(svg, renderSvg(scene), "utf8");
  writeFileSync(png, renderPng(scene));
  return { svg, png };
}

export function isDirectRun(metaUrl: string): boolean {
  const argv1 = process.argv[1];
  return argv1 !== undefined && metaUrl === pathToFileURL(argv1).href;
}

/** Entry-point wrapper: report errors on stderr, nonzero exit, no stack. */
export function runMain(fn: (args: string[]) => void): void {
  try {
    fn(process.argv.slice(2));
  } catch (err) {
    console.error(String(err instanceof Error ? err.message : err));
    process.exitCode = 1;
  }
}
