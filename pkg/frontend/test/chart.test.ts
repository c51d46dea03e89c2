import { describe, expect, it } from "vitest";

import { Panel, fmtNum, logTicks, niceTicks } from "../src/chart.js";
import { newScene } from "../src/scene.js";

describe("tick generation", () => {
  it("niceTicks picks a 1-2-5 step covering the range", () => {
    const vs = niceTicks(0, 82.15, 8).map((t) => t.v);
    expect(vs[0]).toBe(0);
    expect(vs).toContain(40);
    expect(vs[vs.length - 1]).toBe(80);
  });

  it("niceTicks collapses a degenerate range to one tick", () => {
    expect(niceTicks(0.4, 0.4)).toEqual([{ v: 0.4, label: "0.4" }]);
  });

  it("logTicks walks the 1-2-5 ladder", () => {
    const vs = logTicks(0.0087, 0.115).map((t) => t.v);
    expect(vs).toEqual([0.01, 0.02, 0.05, 0.1]);
  });

  it("fmtNum strips float noise", () => {
    expect(fmtNum(0.1 + 0.2)).toBe("0.3");
    expect(fmtNum(45.474862242732537)).toBe("45.47486224");
  });
});

describe("Panel mapping", () => {
  const scene = newScene(200, 100);
  const box = { x: 10, y: 5, w: 100, h: 80 };

  it("linear: endpoints map to box edges, y inverted", () => {
    const p = new Panel(scene, box, { lo: 0, hi: 10 }, { lo: 0, hi: 1 });
    expect(p.px(0)).toBe(10);
    expect(p.px(10)).toBe(110);
    expect(p.py(0)).toBe(85);
    expect(p.py(1)).toBe(5);
    expect(p.px(5)).toBeCloseTo(60, 12);
  });

  it("log: decades are equally spaced", () => {
    const p = new Panel(
      scene,
      box,
      { lo: 0.01, hi: 1, log: true },
      { lo: 0, hi: 1 },
    );
    expect(p.px(0.01)).toBeCloseTo(10, 12);
    expect(p.px(0.1)).toBeCloseTo(60, 12);
    expect(p.px(1)).toBeCloseTo(110, 12);
  });

  it("single-point series draw markers but no polyline", () => {
    const s = newScene(200, 100);
    const p = new Panel(s, box, { lo: 0, hi: 1 }, { lo: 0, hi: 1 });
    p.line([0.5], [0.5], "#000000", 2);
    p.band([0.5], [0.4], [0.6], "#000000");
    expect(s.prims).toHaveLength(0);
    p.markers([0.5], [0.5], "#000000");
    expect(s.prims).toHaveLength(1);
    expect(s.prims[0]!.kind).toBe("circle");
  });
});
