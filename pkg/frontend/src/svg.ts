import { Scene, Primitive, fmt } from "./scene.js";

function esc(s: string): string {
  return s
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

function pointList(pts: { x: number; y: number }[]): string {
  return pts.map((p) => `${fmt(p.x)},${fmt(p.y)}`).join(" ");
}

const FONT = "Helvetica, Arial, sans-serif";

function element(p: Primitive): string {
  switch (p.kind) {
    case "rect":
      return `<rect x="${fmt(p.x)}" y="${fmt(p.y)}" width="${fmt(p.w)}" height="${fmt(p.h)}" fill="${p.fill}"/>`;
    case "line":
      return `<line x1="${fmt(p.x1)}" y1="${fmt(p.y1)}" x2="${fmt(p.x2)}" y2="${fmt(p.y2)}" stroke="${p.stroke}" stroke-width="${fmt(p.width)}"/>`;
    case "polyline": {
      const dash = p.dash ? ` stroke-dasharray="${p.dash.map(fmt).join(" ")}"` : "";
      return `<polyline points="${pointList(p.pts)}" fill="none" stroke="${p.stroke}" stroke-width="${fmt(p.width)}"${dash} stroke-linejoin="round" stroke-linecap="round"/>`;
    }
    case "polygon":
      return `<polygon points="${pointList(p.pts)}" fill="${p.fill}" fill-opacity="${fmt(p.opacity)}" stroke="none"/>`;
    case "circle":
      return `<circle cx="${fmt(p.cx)}" cy="${fmt(p.cy)}" r="${fmt(p.r)}" fill="${p.fill}"/>`;
    case "text":
      return `<text x="${fmt(p.x)}" y="${fmt(p.y)}" font-family="${FONT}" font-size="${fmt(p.size)}" text-anchor="${p.anchor}" fill="${p.fill}">${esc(p.s)}</text>`;
  }
}

/** Serialize a scene to SVG.  Pure string assembly: identical scenes give
 * identical bytes, which the output contract depends on. */
export function renderSvg(scene: Scene): string {
  const lines = [
    `<svg xmlns="http://www.w3.org/2000/svg" width="${scene.width}" height="${scene.height}" viewBox="0 0 ${scene.width} ${scene.height}">`,
  ];
  for (const p of scene.prims) {
    lines.push(element(p));
  }
  lines.push("</svg>");
  return lines.join("\n") + "\n";
}
