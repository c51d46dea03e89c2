/** Panel plumbing shared by the three figure builders: axis mapping, tick
 * generation, series drawing, legends, captions. */

import { Pt, Scene, Primitive } from "./scene.js";

export const COLORS = {
  frame: "#333333",
  grid: "#dddddd",
  text: "#222222",
  muted: "#667788",
  overlap: "#1f5fa8",
  occupation: "#c85a19",
  bias: "#3d8a57",
  warn: "#b01818",
};

export interface Box {
  x: number;
  y: number;
  w: number;
  h: number;
}

export interface AxisRange {
  lo: number;
  hi: number;
  log?: boolean;
}

export interface Tick {
  v: number;
  label: string;
}

/** Trim floating-point noise from a tick value. */
export function fmtNum(v: number): string {
  return String(parseFloat(v.toPrecision(10)));
}

export function niceTicks(lo: number, hi: number, target = 5): Tick[] {
  if (!(hi > lo)) {
    return [{ v: lo, label: fmtNum(lo) }];
  }
  const raw = (hi - lo) / target;
  const mag = 10 ** Math.floor(Math.log10(raw));
  const norm = raw / mag;
  const step = (norm < 1.5 ? 1 : norm < 3.5 ? 2 : norm < 7.5 ? 5 : 10) * mag;
  const ticks: Tick[] = [];
  for (let v = Math.ceil(lo / step) * step; v <= hi + step * 1e-9; v += step) {
    const snapped = Math.abs(v) < step * 1e-6 ? 0 : v;
    ticks.push({ v: snapped, label: fmtNum(snapped) });
  }
  return ticks;
}

/** 1-2-5 ladder per decade, for log axes. */
export function logTicks(lo: number, hi: number): Tick[] {
  const ticks: Tick[] = [];
  const d0 = Math.floor(Math.log10(lo));
  const d1 = Math.ceil(Math.log10(hi));
  for (let d = d0; d <= d1; d++) {
    for (const m of [1, 2, 5]) {
      const v = m * 10 ** d;
      if (v >= lo * (1 - 1e-9) && v <= hi * (1 + 1e-9)) {
        ticks.push({ v, label: fmtNum(v) });
      }
    }
  }
  return ticks;
}

export class Panel {
  constructor(
    readonly scene: Scene,
    readonly box: Box,
    public xa: AxisRange,
    public ya: AxisRange,
  ) {}

  private axisFrac(a: AxisRange, v: number): number {
    if (a.log) {
      return Math.log(v / a.lo) / Math.log(a.hi / a.lo);
    }
    return (v - a.lo) / (a.hi - a.lo);
  }

  px(v: number): number {
    return this.box.x + this.axisFrac(this.xa, v) * this.box.w;
  }

  py(v: number, axis: AxisRange = this.ya): number {
    return this.box.y + this.box.h - this.axisFrac(axis, v) * this.box.h;
  }

  private add(p: Primitive): void {
    this.scene.prims.push(p);
  }

  background(fill = "#ffffff"): void {
    this.add({ kind: "rect", ...this.box, fill });
  }

  frame(): void {
    const { x, y, w, h } = this.box;
    const s = COLORS.frame;
    this.add({ kind: "line", x1: x, y1: y, x2: x + w, y2: y, stroke: s, width: 1 });
    this.add({ kind: "line", x1: x, y1: y + h, x2: x + w, y2: y + h, stroke: s, width: 1 });
    this.add({ kind: "line", x1: x, y1: y, x2: x, y2: y + h, stroke: s, width: 1 });
    this.add({ kind: "line", x1: x + w, y1: y, x2: x + w, y2: y + h, stroke: s, width: 1 });
  }

  xTicks(ticks: Tick[], opts: { grid?: boolean; size?: number } = {}): void {
    const { y, h } = this.box;
    const size = opts.size ?? 12;
    for (const t of ticks) {
      const x = this.px(t.v);
      if (opts.grid) {
        this.add({ kind: "line", x1: x, y1: y, x2: x, y2: y + h, stroke: COLORS.grid, width: 1 });
      }
      this.add({ kind: "line", x1: x, y1: y + h, x2: x, y2: y + h + 4, stroke: COLORS.frame, width: 1 });
      this.add({ kind: "text", x, y: y + h + 6 + size, s: t.label, size, anchor: "middle", fill: COLORS.text });
    }
  }

  yTicks(ticks: Tick[], opts: { grid?: boolean; size?: number } = {}): void {
    const { x, w } = this.box;
    const size = opts.size ?? 12;
    for (const t of ticks) {
      const y = this.py(t.v);
      if (opts.grid) {
        this.add({ kind: "line", x1: x, y1: y, x2: x + w, y2: y, stroke: COLORS.grid, width: 1 });
      }
      this.add({ kind: "line", x1: x - 4, y1: y, x2: x, y2: y, stroke: COLORS.frame, width: 1 });
      this.add({ kind: "text", x: x - 7, y: y + size * 0.35, s: t.label, size, anchor: "end", fill: COLORS.text });
    }
  }

  /** Secondary scale drawn on the right edge. */
  yTicksRight(ticks: Tick[], axis: AxisRange, color: string, size = 12): void {
    const { x, w } = this.box;
    for (const t of ticks) {
      const y = this.py(t.v, axis);
      this.add({ kind: "line", x1: x + w, y1: y, x2: x + w + 4, y2: y, stroke: color, width: 1 });
      this.add({ kind: "text", x: x + w + 7, y: y + size * 0.35, s: t.label, size, anchor: "start", fill: color });
    }
  }

  line(xs: number[], ys: number[], color: string, width: number, dash?: number[], axis?: AxisRange): void {
    const pts: Pt[] = [];
    for (let i = 0; i < xs.length; i++) {
      pts.push({ x: this.px(xs[i]!), y: this.py(ys[i]!, axis) });
    }
    if (pts.length >= 2) {
      this.add({ kind: "polyline", pts, stroke: color, width, dash });
    }
  }

  markers(xs: number[], ys: number[], color: string, r = 3, axis?: AxisRange): void {
    for (let i = 0; i < xs.length; i++) {
      this.add({ kind: "circle", cx: this.px(xs[i]!), cy: this.py(ys[i]!, axis), r, fill: color });
    }
  }

  band(xs: number[], lo: number[], hi: number[], color: string, opacity = 0.2): void {
    if (xs.length < 2) return;
    const pts: Pt[] = [];
    for (let i = 0; i < xs.length; i++) {
      pts.push({ x: this.px(xs[i]!), y: this.py(hi[i]!) });
    }
    for (let i = xs.length - 1; i >= 0; i--) {
      pts.push({ x: this.px(xs[i]!), y: this.py(lo[i]!) });
    }
    this.add({ kind: "polygon", pts, fill: color, opacity });
  }

  xLabel(s: string, size = 13): void {
    const { x, y, w, h } = this.box;
    this.add({ kind: "text", x: x + w / 2, y: y + h + 38, s, size, anchor: "middle", fill: COLORS.text });
  }

  /** Horizontal label above the top-left corner, so the raster backend
   * never needs rotated glyphs. */
  yLabel(s: string, size = 13): void {
    const { x, y } = this.box;
    this.add({ kind: "text", x, y: y - 8, s, size, anchor: "start", fill: COLORS.text });
  }

  yLabelRight(s: string, color: string, size = 13): void {
    const { x, y, w } = this.box;
    this.add({ kind: "text", x: x + w, y: y - 8, s, size, anchor: "end", fill: color });
  }

  title(s: string, size = 15): void {
    const { x, y, w } = this.box;
    this.add({ kind: "text", x: x + w / 2, y: y - 12, s, size, anchor: "middle", fill: COLORS.text });
  }

  legend(entries: { label: string; color: string; dash?: number[]; marker?: boolean }[], at: Pt, size = 12): void {
    const x0 = this.box.x + at.x;
    let y = this.box.y + at.y;
    for (const e of entries) {
      if (e.marker) {
        this.add({ kind: "circle", cx: x0 + 11, cy: y - size * 0.3, r: 3, fill: e.color });
      } else {
        this.add({
          kind: "polyline",
          pts: [
            { x: x0, y: y - size * 0.3 },
            { x: x0 + 22, y: y - size * 0.3 },
          ],
          stroke: e.color,
          width: 2,
          dash: e.dash,
        });
      }
      this.add({ kind: "text", x: x0 + 28, y, s: e.label, size, anchor: "start", fill: COLORS.text });
      y += size + 6;
    }
  }

  annotate(s: string, color = COLORS.muted, size = 13): void {
    const { x, y, w, h } = this.box;
    this.add({ kind: "text", x: x + w / 2, y: y + h / 2 + size * 0.35, s, size, anchor: "middle", fill: color });
  }
}

/** Caption line every figure carries: input basenames plus the coupling. */
export function sourcesCaption(files: string[], gText: string): string {
  return `sources: ${files.join(", ")}   g/ħω0 = ${gText}`;
}

export function drawCaption(scene: Scene, text: string): void {
  scene.prims.push({
    kind: "text",
    x: 16,
    y: scene.height - 12,
    s: text,
    size: 12,
    anchor: "start",
    fill: COLORS.muted,
  });
}

export function drawBanner(scene: Scene, text: string): void {
  scene.prims.push({
    kind: "text",
    x: scene.width / 2,
    y: 20,
    s: text,
    size: 13,
    anchor: "middle",
    fill: COLORS.warn,
  });
}
