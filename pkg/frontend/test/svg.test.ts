import { describe, expect, it } from "vitest";
import {
  escapeXml,
  formatTick,
  linearScale,
  niceTicks,
  renderPanel,
  svgDocument,
} from "../src/svg.js";

describe("linearScale", () => {
  it("maps the domain endpoints onto the range", () => {
    const s = linearScale(0, 10, 100, 200);
    expect(s(0)).toBe(100);
    expect(s(10)).toBe(200);
    expect(s(5)).toBe(150);
  });

  it("inverts for flipped ranges (screen y)", () => {
    const s = linearScale(0, 1, 300, 0);
    expect(s(0)).toBe(300);
    expect(s(1)).toBe(0);
  });

  it("degenerate domain maps everything to the range midpoint", () => {
    const s = linearScale(2, 2, 0, 100);
    expect(s(2)).toBe(50);
    expect(s(7)).toBe(50);
  });
});

describe("niceTicks", () => {
  it("covers the domain with round steps", () => {
    const t = niceTicks(0, 400, 6);
    expect(t[0]).toBe(0);
    expect(t[t.length - 1]).toBeLessThanOrEqual(400);
    const steps = new Set(t.slice(1).map((v, i) => +(v - t[i]).toPrecision(6)));
    expect(steps.size).toBe(1);
  });

  it("handles sub-unit spans", () => {
    const t = niceTicks(0.49, 0.5, 5);
    expect(t.length).toBeGreaterThanOrEqual(3);
    expect(t.every((v) => v >= 0.49 - 1e-12 && v <= 0.5 + 1e-12)).toBe(true);
  });

  it("collapses a degenerate domain to its single value", () => {
    expect(niceTicks(3, 3)).toEqual([3]);
  });
});

describe("formatTick", () => {
  it("keeps moderate values plain", () => {
    expect(formatTick(0)).toBe("0");
    expect(formatTick(0.5)).toBe("0.5");
    expect(formatTick(400)).toBe("400");
  });

  it("switches to exponent notation at the extremes", () => {
    expect(formatTick(1e-5)).toBe("1.0e-5");
    expect(formatTick(25000)).toBe("2.5e+4");
  });

  it("trims float noise", () => {
    expect(formatTick(0.30000000000000004)).toBe("0.3");
  });
});

describe("escapeXml", () => {
  it("escapes markup characters", () => {
    expect(escapeXml('a<b & "c"')).toBe("a&lt;b &amp; &quot;c&quot;");
  });
});

describe("renderPanel", () => {
  const panel = {
    title: "demo",
    xLabel: "t",
    yLabel: "y",
    series: [
      {
        label: "flat",
        color: "#1f77b4",
        points: [
          { x: 0, y: 0.5 },
          { x: 1, y: 0.5 },
        ],
      },
    ],
    hlines: [{ y: 0.4, color: "#d62728", label: "level", cssClass: "eq13-level" }],
  };

  it("emits the series, the overlay, and the legend", () => {
    const body = renderPanel(panel, 0, 0, 500, 300);
    expect(body).toContain("<polyline");
    expect(body).toContain('class="eq13-level"');
    expect(body).toContain(">demo</text>");
    expect(body).toContain(">flat</text>");
    expect(body).toContain(">level</text>");
  });

  it("is deterministic", () => {
    const a = renderPanel(panel, 0, 0, 500, 300);
    const b = renderPanel(panel, 0, 0, 500, 300);
    expect(a).toBe(b);
  });

  it("refuses an all-empty panel", () => {
    expect(() =>
      renderPanel({ title: "x", xLabel: "", yLabel: "", series: [] }, 0, 0, 100, 100)
    ).toThrow(/no data points/);
  });

  it("wraps into a standalone document", () => {
    const doc = svgDocument(500, 300, renderPanel(panel, 0, 0, 500, 300));
    expect(doc.startsWith("<svg xmlns=")).toBe(true);
    expect(doc.trimEnd().endsWith("</svg>")).toBe(true);
  });
});
