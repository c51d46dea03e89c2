/** Device-independent drawing primitives shared by the SVG and PNG backends.
 *
 * Figures are assembled as a flat primitive list in paint order; both
 * renderers walk the same list, which is what keeps the two output formats
 * in agreement and the SVG byte-stable (no renderer-side state, no clock).
 */

export interface Pt {
  x: number;
  y: number;
}

export type Primitive =
  | { kind: "rect"; x: number; y: number; w: number; h: number; fill: string }
  | {
      kind: "line";
      x1: number;
      y1: number;
      x2: number;
      y2: number;
      stroke: string;
      width: number;
    }
  | {
      kind: "polyline";
      pts: Pt[];
      stroke: string;
      width: number;
      dash?: number[];
    }
  | { kind: "polygon"; pts: Pt[]; fill: string; opacity: number }
  | { kind: "circle"; cx: number; cy: number; r: number; fill: string }
  | {
      kind: "text";
      x: number;
      y: number;
      s: string;
      size: number;
      anchor: "start" | "middle" | "end";
      fill: string;
    };

export interface Scene {
  width: number;
  height: number;
  prims: Primitive[];
}

export function newScene(width: number, height: number): Scene {
  return { width, height, prims: [] };
}

/** Coordinate formatter: fixed two decimals, trailing zeros trimmed. */
export function fmt(v: number): string {
  if (!Number.isFinite(v)) {
    throw new Error(`non-finite coordinate: ${v}`);
  }
  const s = v.toFixed(2).replace(/0+$/, "").replace(/\.$/, "");
  return s === "-0" ? "0" : s;
}
