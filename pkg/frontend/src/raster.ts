/** Software rasterizer for the scene primitives.
 *
 * Strokes are stamped as discs along the path (dash-aware), polygons are
 * scanline-filled with alpha, text uses the 5x7 bitmap font.  Quality aims
 * at "readable figure", not anti-aliased typography; the SVG twin is the
 * publication-grade output.
 */

import { Pt, Primitive, Scene } from "./scene.js";
import { GLYPH_H, GLYPH_STEP, GLYPH_W, glyph } from "./font.js";
import { encodePng } from "./png.js";

type Rgb = [number, number, number];

export function parseColor(hex: string): Rgb {
  const m = /^#([0-9a-fA-F]{6})$/.exec(hex);
  if (!m) {
    throw new Error(`unsupported color "${hex}", use #rrggbb`);
  }
  const v = parseInt(m[1]!, 16);
  return [(v >> 16) & 0xff, (v >> 8) & 0xff, v & 0xff];
}

class Canvas {
  readonly data: Uint8Array;

  constructor(
    readonly width: number,
    readonly height: number,
  ) {
    this.data = new Uint8Array(width * height * 4).fill(0xff);
  }

  blend(x: number, y: number, rgb: Rgb, alpha: number): void {
    if (x < 0 || y < 0 || x >= this.width || y >= this.height) return;
    const i = (y * this.width + x) * 4;
    const d = this.data;
    d[i] = Math.round(rgb[0] * alpha + d[i]! * (1 - alpha));
    d[i + 1] = Math.round(rgb[1] * alpha + d[i + 1]! * (1 - alpha));
    d[i + 2] = Math.round(rgb[2] * alpha + d[i + 2]! * (1 - alpha));
    d[i + 3] = 0xff;
  }

  fillRect(x0: number, y0: number, w: number, h: number, rgb: Rgb): void {
    const xa = Math.max(0, Math.round(x0));
    const ya = Math.max(0, Math.round(y0));
    const xb = Math.min(this.width, Math.round(x0 + w));
    const yb = Math.min(this.height, Math.round(y0 + h));
    for (let y = ya; y < yb; y++) {
      for (let x = xa; x < xb; x++) {
        this.blend(x, y, rgb, 1);
      }
    }
  }

  fillDisc(cx: number, cy: number, r: number, rgb: Rgb): void {
    const xa = Math.floor(cx - r);
    const xb = Math.ceil(cx + r);
    const ya = Math.floor(cy - r);
    const yb = Math.ceil(cy + r);
    const r2 = r * r;
    for (let y = ya; y <= yb; y++) {
      for (let x = xa; x <= xb; x++) {
        const dx = x - cx;
        const dy = y - cy;
        if (dx * dx + dy * dy <= r2) {
          this.blend(x, y, rgb, 1);
        }
      }
    }
  }
}

function strokeSegments(
  cv: Canvas,
  pts: Pt[],
  rgb: Rgb,
  width: number,
  dash: number[] | undefined,
): void {
  const r = Math.max(0.6, width / 2);
  const period = dash ? dash.reduce((a, b) => a + b, 0) : 0;
  let travelled = 0;
  const penDown = (dist: number): boolean => {
    if (!dash || period <= 0) return true;
    let t = dist % period;
    for (let i = 0; i < dash.length; i++) {
      if (t < dash[i]!) return i % 2 === 0;
      t -= dash[i]!;
    }
    return true;
  };
  for (let i = 0; i + 1 < pts.length; i++) {
    const a = pts[i]!;
    const b = pts[i + 1]!;
    const len = Math.hypot(b.x - a.x, b.y - a.y);
    if (len === 0) continue;
    const steps = Math.max(1, Math.ceil(len / 0.4));
    for (let k = 0; k <= steps; k++) {
      const f = k / steps;
      if (penDown(travelled + f * len)) {
        cv.fillDisc(a.x + f * (b.x - a.x), a.y + f * (b.y - a.y), r, rgb);
      }
    }
    travelled += len;
  }
}

function fillPolygon(cv: Canvas, pts: Pt[], rgb: Rgb, opacity: number): void {
  if (pts.length < 3) return;
  let yMin = Infinity;
  let yMax = -Infinity;
  for (const p of pts) {
    yMin = Math.min(yMin, p.y);
    yMax = Math.max(yMax, p.y);
  }
  const y0 = Math.max(0, Math.floor(yMin));
  const y1 = Math.min(cv.height - 1, Math.ceil(yMax));
  for (let y = y0; y <= y1; y++) {
    const yc = y + 0.5;
    const xs: number[] = [];
    for (let i = 0; i < pts.length; i++) {
      const a = pts[i]!;
      const b = pts[(i + 1) % pts.length]!;
      if (a.y === b.y) continue;
      if ((yc >= a.y && yc < b.y) || (yc >= b.y && yc < a.y)) {
        xs.push(a.x + ((yc - a.y) / (b.y - a.y)) * (b.x - a.x));
      }
    }
    xs.sort((p, q) => p - q);
    for (let i = 0; i + 1 < xs.length; i += 2) {
      const xa = Math.max(0, Math.round(xs[i]!));
      const xb = Math.min(cv.width - 1, Math.round(xs[i + 1]!));
      for (let x = xa; x <= xb; x++) {
        cv.blend(x, y, rgb, opacity);
      }
    }
  }
}

function drawText(
  cv: Canvas,
  x: number,
  y: number,
  s: string,
  size: number,
  anchor: "start" | "middle" | "end",
  rgb: Rgb,
): void {
  const chars = Array.from(s);
  const scale = Math.max(1, Math.round(size / 8));
  const width = chars.length * GLYPH_STEP * scale - scale;
  let x0 = Math.round(x);
  if (anchor === "middle") x0 -= Math.round(width / 2);
  if (anchor === "end") x0 -= width;
  const yTop = Math.round(y) - GLYPH_H * scale + scale; // y is the baseline
  for (let ci = 0; ci < chars.length; ci++) {
    const cols = glyph(chars[ci]!);
    const gx = x0 + ci * GLYPH_STEP * scale;
    for (let col = 0; col < GLYPH_W; col++) {
      const bits = cols[col]!;
      for (let row = 0; row < GLYPH_H; row++) {
        if ((bits >> row) & 1) {
          cv.fillRect(gx + col * scale, yTop + row * scale, scale, scale, rgb);
        }
      }
    }
  }
}

function paint(cv: Canvas, p: Primitive): void {
  switch (p.kind) {
    case "rect":
      cv.fillRect(p.x, p.y, p.w, p.h, parseColor(p.fill));
      break;
    case "line":
      strokeSegments(
        cv,
        [
          { x: p.x1, y: p.y1 },
          { x: p.x2, y: p.y2 },
        ],
        parseColor(p.stroke),
        p.width,
        undefined,
      );
      break;
    case "polyline":
      strokeSegments(cv, p.pts, parseColor(p.stroke), p.width, p.dash);
      break;
    case "polygon":
      fillPolygon(cv, p.pts, parseColor(p.fill), p.opacity);
      break;
    case "circle":
      cv.fillDisc(p.cx, p.cy, p.r, parseColor(p.fill));
      break;
    case "text":
      drawText(cv, p.x, p.y, p.s, p.size, p.anchor, parseColor(p.fill));
      break;
  }
}

export function rasterize(scene: Scene): Uint8Array {
  const cv = new Canvas(scene.width, scene.height);
  for (const p of scene.prims) {
    paint(cv, p);
  }
  return cv.data;
}

export function renderPng(scene: Scene): Buffer {
  return encodePng(scene.width, scene.height, rasterize(scene));
}
