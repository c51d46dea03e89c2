import { inflateSync } from "node:zlib";
import { describe, expect, it } from "vitest";

import { crc32, encodePng } from "../src/png.js";
import { newScene } from "../src/scene.js";
import { parseColor, rasterize, renderPng } from "../src/raster.js";

describe("crc32", () => {
  it("matches the standard check value", () => {
    // the canonical CRC-32 test vector
    expect(crc32(Buffer.from("123456789", "ascii"))).toBe(0xcbf43926);
  });

  it("empty input gives zero", () => {
    expect(crc32(new Uint8Array(0))).toBe(0);
  });
});

describe("encodePng", () => {
  it("produces a decodable 1x1 image", () => {
    const png = encodePng(1, 1, new Uint8Array([10, 20, 30, 255]));
    expect([...png.subarray(0, 8)]).toEqual([
      0x89, 0x50, 0x4e, 0x47, 0x0d, 0x0a, 0x1a, 0x0a,
    ]);
    // IHDR directly after the signature
    expect(png.readUInt32BE(8)).toBe(13);
    expect(png.subarray(12, 16).toString("ascii")).toBe("IHDR");
    expect(png.readUInt32BE(16)).toBe(1); // width
    expect(png.readUInt32BE(20)).toBe(1); // height
    expect(png[24]).toBe(8); // bit depth
    expect(png[25]).toBe(6); // RGBA
    expect(png.subarray(png.length - 8, png.length - 4).toString("ascii")).toBe(
      "IEND",
    );
  });

  it("IDAT inflates back to filtered scanlines", () => {
    const rgba = new Uint8Array([255, 0, 0, 255, 0, 255, 0, 255]);
    const png = encodePng(2, 1, rgba);
    const idatLen = png.readUInt32BE(33);
    expect(png.subarray(37, 41).toString("ascii")).toBe("IDAT");
    const raw = inflateSync(png.subarray(41, 41 + idatLen));
    expect([...raw]).toEqual([0, 255, 0, 0, 255, 0, 255, 0, 255]);
  });

  it("rejects a wrongly sized buffer", () => {
    expect(() => encodePng(2, 2, new Uint8Array(3))).toThrow(/expected 16/);
  });
});

describe("rasterize", () => {
  it("parses colors and fills rectangles", () => {
    expect(parseColor("#1f5fa8")).toEqual([0x1f, 0x5f, 0xa8]);
    expect(() => parseColor("red")).toThrow(/unsupported color/);

    const scene = newScene(4, 4);
    scene.prims.push({ kind: "rect", x: 1, y: 1, w: 2, h: 2, fill: "#000000" });
    const px = rasterize(scene);
    const at = (x: number, y: number) => px[(y * 4 + x) * 4];
    expect(at(0, 0)).toBe(255); // white border
    expect(at(1, 1)).toBe(0); // filled
    expect(at(2, 2)).toBe(0);
    expect(at(3, 3)).toBe(255);
  });

  it("strokes lines and stamps text pixels", () => {
    const scene = newScene(40, 20);
    scene.prims.push({
      kind: "polyline",
      pts: [
        { x: 2, y: 10 },
        { x: 38, y: 10 },
      ],
      stroke: "#000000",
      width: 2,
    });
    scene.prims.push({
      kind: "text",
      x: 2,
      y: 8,
      s: "F2",
      size: 8,
      anchor: "start",
      fill: "#b01818",
    });
    const px = rasterize(scene);
    let dark = 0;
    let red = 0;
    for (let i = 0; i < px.length; i += 4) {
      if (px[i]! < 64 && px[i + 1]! < 64) dark++;
      if (px[i]! > 150 && px[i + 1]! < 64) red++;
    }
    expect(dark).toBeGreaterThan(30); // the stroked line
    expect(red).toBeGreaterThan(10); // glyph pixels
  });

  it("renderPng on a scene round-trips dimensions", () => {
    const scene = newScene(12, 7);
    const png = renderPng(scene);
    expect(png.readUInt32BE(16)).toBe(12);
    expect(png.readUInt32BE(20)).toBe(7);
  });
});
