import { mkdtempSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { fileURLToPath } from "node:url";

export function fixture(...parts: string[]): string {
  return join(fileURLToPath(new URL("../fixtures/", import.meta.url)), ...parts);
}

export function tmpDir(): string {
  return mkdtempSync(join(tmpdir(), "figtest-"));
}

export function writeTmp(dir: string, name: string, text: string): string {
  const p = join(dir, name);
  writeFileSync(p, text, "utf8");
  return p;
}

/** Smallest result.json a figure needs: coupling plus schedule landmarks. */
export function resultJson(gRatio: number, total: number, window: [number, number]): string {
  return JSON.stringify({
    config: { device: { g_ratio: gRatio } },
    schedule: { total_ns: total, window_ns: window },
  });
}

export const SWEEP_HEADER =
  "parameter,f2_mean,f2_min,f2_max,gate_time_ns,s_off,error";

export function sweepRow(
  parameter: number,
  f2: number,
  gate: number,
  error = "",
): string {
  const lo = f2 - 0.01;
  const hi = f2 + 0.01;
  return `${parameter},${f2},${lo},${hi},${gate},0.407,${error}`;
}
