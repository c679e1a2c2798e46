/** Hand-rolled SVG line charts. No DOM, no timestamps, no randomness:
 *  identical input must produce byte-identical output. */

export interface Point {
  x: number;
  y: number;
}

export interface Series {
  label: string;
  color: string;
  points: Point[];
  dash?: string;
  markers?: boolean;
  cssClass?: string;
}

/** Horizontal reference line spanning the panel. */
export interface HLine {
  y: number;
  color: string;
  label?: string;
  cssClass?: string;
}

/** Vertical reference line spanning the panel. */
export interface VLine {
  x: number;
  color: string;
  label?: string;
  cssClass?: string;
}

export interface Panel {
  title: string;
  xLabel: string;
  yLabel: string;
  series: Series[];
  hlines?: HLine[];
  vlines?: VLine[];
  legend?: boolean;
}

export const PALETTE = [
  "#1f77b4",
  "#d62728",
  "#2ca02c",
  "#9467bd",
  "#ff7f0e",
  "#8c564b",
  "#17becf",
  "#7f7f7f",
];

export function seriesColor(i: number): string {
  return PALETTE[i % PALETTE.length];
}

export function linearScale(
  d0: number,
  d1: number,
  r0: number,
  r1: number
): (v: number) => number {
  if (d0 === d1) {
    const mid = (r0 + r1) / 2;
    return () => mid;
  }
  const k = (r1 - r0) / (d1 - d0);
  return (v: number) => r0 + (v - d0) * k;
}

export function niceTicks(lo: number, hi: number, count = 5): number[] {
  if (!(hi > lo)) return [lo];
  const raw = (hi - lo) / count;
  const mag = Math.pow(10, Math.floor(Math.log10(raw)));
  const norm = raw / mag;
  const step = (norm < 1.5 ? 1 : norm < 3 ? 2 : norm < 7 ? 5 : 10) * mag;
  const out: number[] = [];
  const first = Math.ceil(lo / step) * step;
  for (let v = first; v <= hi + step * 1e-9; v += step) {
    out.push(Math.abs(v) < step * 1e-9 ? 0 : v);
  }
  return out;
}

export function formatTick(v: number): string {
  if (v === 0) return "0";
  const a = Math.abs(v);
  if (a >= 1e4 || a < 1e-3) {
    return v.toExponential(1);
  }
  return String(parseFloat(v.toPrecision(6)));
}

export function escapeXml(s: string): string {
  return s
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

function extent(values: number[]): [number, number] {
  let lo = Infinity;
  let hi = -Infinity;
  for (const v of values) {
    if (v < lo) lo = v;
    if (v > hi) hi = v;
  }
  return [lo, hi];
}

const MARGIN = { left: 64, right: 16, top: 30, bottom: 46 };

function px(v: number): string {
  return v.toFixed(2);
}

/** Renders one panel into the rectangle (x0, y0, width, height). */
export function renderPanel(
  panel: Panel,
  x0: number,
  y0: number,
  width: number,
  height: number
): string {
  const allX: number[] = [];
  const allY: number[] = [];
  for (const s of panel.series) {
    for (const p of s.points) {
      allX.push(p.x);
      allY.push(p.y);
    }
  }
  for (const h of panel.hlines ?? []) allY.push(h.y);
  for (const v of panel.vlines ?? []) allX.push(v.x);
  if (allX.length === 0) {
    throw new Error(`panel "${panel.title}" has no data points`);
  }

  let [xLo, xHi] = extent(allX);
  let [yLo, yHi] = extent(allY);
  if (xLo === xHi) {
    const pad = Math.max(Math.abs(xLo) * 0.05, 0.5);
    xLo -= pad;
    xHi += pad;
  }
  if (yLo === yHi) {
    const pad = Math.max(Math.abs(yLo) * 0.05, 1e-6);
    yLo -= pad;
    yHi += pad;
  } else {
    const pad = (yHi - yLo) * 0.06;
    yLo -= pad;
    yHi += pad;
  }

  const plotX = x0 + MARGIN.left;
  const plotY = y0 + MARGIN.top;
  const plotW = width - MARGIN.left - MARGIN.right;
  const plotH = height - MARGIN.top - MARGIN.bottom;
  const sx = linearScale(xLo, xHi, plotX, plotX + plotW);
  const sy = linearScale(yLo, yHi, plotY + plotH, plotY);

  const parts: string[] = [];
  parts.push(
    `<text x="${px(plotX + plotW / 2)}" y="${px(y0 + 16)}" text-anchor="middle" font-size="13">${escapeXml(panel.title)}</text>`
  );

  for (const tv of niceTicks(xLo, xHi, 6)) {
    const tx = sx(tv);
    parts.push(
      `<line x1="${px(tx)}" y1="${px(plotY)}" x2="${px(tx)}" y2="${px(plotY + plotH)}" stroke="#e0e0e0" stroke-width="0.5"/>`
    );
    parts.push(
      `<line x1="${px(tx)}" y1="${px(plotY + plotH)}" x2="${px(tx)}" y2="${px(plotY + plotH + 4)}" stroke="#444"/>`
    );
    parts.push(
      `<text x="${px(tx)}" y="${px(plotY + plotH + 16)}" text-anchor="middle">${formatTick(tv)}</text>`
    );
  }
  for (const tv of niceTicks(yLo, yHi, 5)) {
    const ty = sy(tv);
    parts.push(
      `<line x1="${px(plotX)}" y1="${px(ty)}" x2="${px(plotX + plotW)}" y2="${px(ty)}" stroke="#e0e0e0" stroke-width="0.5"/>`
    );
    parts.push(
      `<line x1="${px(plotX - 4)}" y1="${px(ty)}" x2="${px(plotX)}" y2="${px(ty)}" stroke="#444"/>`
    );
    parts.push(
      `<text x="${px(plotX - 7)}" y="${px(ty + 3.5)}" text-anchor="end">${formatTick(tv)}</text>`
    );
  }

  for (const h of panel.hlines ?? []) {
    const cls = h.cssClass ? ` class="${h.cssClass}"` : "";
    parts.push(
      `<line${cls} x1="${px(plotX)}" y1="${px(sy(h.y))}" x2="${px(plotX + plotW)}" y2="${px(sy(h.y))}" stroke="${h.color}" stroke-width="1.2" stroke-dasharray="7 4"/>`
    );
  }
  for (const v of panel.vlines ?? []) {
    const cls = v.cssClass ? ` class="${v.cssClass}"` : "";
    parts.push(
      `<line${cls} x1="${px(sx(v.x))}" y1="${px(plotY)}" x2="${px(sx(v.x))}" y2="${px(plotY + plotH)}" stroke="${v.color}" stroke-width="1.2" stroke-dasharray="3 3"/>`
    );
    if (v.label) {
      parts.push(
        `<text x="${px(sx(v.x) + 4)}" y="${px(plotY + 12)}" fill="${v.color}">${escapeXml(v.label)}</text>`
      );
    }
  }

  for (const s of panel.series) {
    const cls = s.cssClass ? ` class="${s.cssClass}"` : "";
    const dash = s.dash ? ` stroke-dasharray="${s.dash}"` : "";
    if (s.points.length > 1) {
      const pts = s.points.map((p) => `${px(sx(p.x))},${px(sy(p.y))}`).join(" ");
      parts.push(
        `<polyline${cls} points="${pts}" fill="none" stroke="${s.color}" stroke-width="1.5"${dash}/>`
      );
    }
    if (s.markers || s.points.length === 1) {
      for (const p of s.points) {
        parts.push(
          `<circle${cls} cx="${px(sx(p.x))}" cy="${px(sy(p.y))}" r="2.5" fill="${s.color}"/>`
        );
      }
    }
  }

  parts.push(
    `<rect x="${px(plotX)}" y="${px(plotY)}" width="${px(plotW)}" height="${px(plotH)}" fill="none" stroke="#444"/>`
  );
  parts.push(
    `<text x="${px(plotX + plotW / 2)}" y="${px(plotY + plotH + 34)}" text-anchor="middle" font-size="12">${escapeXml(panel.xLabel)}</text>`
  );
  parts.push(
    `<text x="${px(x0 + 14)}" y="${px(plotY + plotH / 2)}" text-anchor="middle" font-size="12" transform="rotate(-90 ${px(x0 + 14)} ${px(plotY + plotH / 2)})">${escapeXml(panel.yLabel)}</text>`
  );

  if (panel.legend !== false) {
    const entries: { label: string; color: string; dash?: string }[] = [];
    for (const s of panel.series) {
      entries.push({ label: s.label, color: s.color, dash: s.dash });
    }
    const hlabels = new Map<string, string>();
    for (const h of panel.hlines ?? []) {
      if (h.label && !hlabels.has(h.label)) hlabels.set(h.label, h.color);
    }
    for (const [label] of hlabels) {
      entries.push({ label, color: "#555", dash: "7 4" });
    }
    const maxLen = Math.max(...entries.map((e) => e.label.length));
    const boxW = maxLen * 6.4 + 34;
    const boxH = entries.length * 15 + 8;
    const bx = plotX + plotW - boxW - 6;
    const by = plotY + 6;
    parts.push(
      `<rect x="${px(bx)}" y="${px(by)}" width="${px(boxW)}" height="${px(boxH)}" fill="#ffffff" fill-opacity="0.85" stroke="#bbb"/>`
    );
    entries.forEach((e, i) => {
      const ey = by + 12 + i * 15;
      const dash = e.dash ? ` stroke-dasharray="${e.dash}"` : "";
      parts.push(
        `<line x1="${px(bx + 6)}" y1="${px(ey - 3.5)}" x2="${px(bx + 26)}" y2="${px(ey - 3.5)}" stroke="${e.color}" stroke-width="1.5"${dash}/>`
      );
      parts.push(
        `<text x="${px(bx + 30)}" y="${px(ey)}">${escapeXml(e.label)}</text>`
      );
    });
  }

  return parts.join("\n");
}

export function svgDocument(width: number, height: number, body: string): string {
  return (
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" ` +
    `viewBox="0 0 ${width} ${height}" font-family="Helvetica, Arial, sans-serif" font-size="10">\n` +
    `<rect width="${width}" height="${height}" fill="#ffffff"/>\n` +
    body +
    `\n</svg>\n`
  );
}
