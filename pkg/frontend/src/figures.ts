import { mkdirSync, readFileSync, writeFileSync } from "node:fs";
import { join } from "node:path";
import {
  CsvError,
  CsvTable,
  numberColumn,
  readCsv,
  requiredNumberColumn,
  stringColumn,
} from "./csv.js";
import {
  HLine,
  Panel,
  Series,
  VLine,
  renderPanel,
  seriesColor,
  svgDocument,
} from "./svg.js";

const PANEL_W = 520;
const PANEL_H = 360;

/** Group row indices by cell value, preserving first-appearance order. */
function groupRows(keys: string[]): Map<string, number[]> {
  const groups = new Map<string, number[]>();
  keys.forEach((key, i) => {
    const bucket = groups.get(key);
    if (bucket) bucket.push(i);
    else groups.set(key, [i]);
  });
  return groups;
}

function sortedNumericKeys(groups: Map<string, number[]>): string[] {
  return [...groups.keys()].sort((a, b) => Number(a) - Number(b));
}

function buildFig1b(inDir: string): string {
  const table = readCsv(join(inDir, "fig1b.csv"));
  const t = requiredNumberColumn(table, "t");
  const f = requiredNumberColumn(table, "f_minus");
  const regime = stringColumn(table, "regime");
  const r = stringColumn(table, "r");

  const regimeOrder = [...new Set(regime)];
  const rOrder = [...new Set(r)].sort((a, b) => Number(a) - Number(b));
  const series: Series[] = [];
  for (const reg of regimeOrder) {
    for (const rv of rOrder) {
      const points = [];
      for (let i = 0; i < table.rows.length; i++) {
        if (regime[i] === reg && r[i] === rv) points.push({ x: t[i], y: f[i] });
      }
      if (points.length === 0) continue;
      series.push({
        label: `${reg} r=${rv}`,
        color: seriesColor(rOrder.indexOf(rv)),
        points,
        dash: reg === "ideal" ? undefined : "5 3",
      });
    }
  }
  const panel: Panel = {
    title: "resolution bound over time",
    xLabel: "t",
    yLabel: "F-",
    series,
  };
  return svgDocument(PANEL_W, PANEL_H, renderPanel(panel, 0, 0, PANEL_W, PANEL_H));
}

function sweepPanel(table: CsvTable, title: string, labelPrefix: string): Panel {
  const t = requiredNumberColumn(table, "t");
  const f = requiredNumberColumn(table, "f_minus");
  const param = stringColumn(table, "param");
  const level = numberColumn(table, "eq13_level");

  const groups = groupRows(param);
  const keys = sortedNumericKeys(groups);
  const series: Series[] = [];
  const hlines: HLine[] = [];
  keys.forEach((key, ki) => {
    const idx = groups.get(key)!;
    series.push({
      label: `${labelPrefix}${key}`,
      color: seriesColor(ki),
      points: idx.map((i) => ({ x: t[i], y: f[i] })),
    });
    const lv = idx.map((i) => level[i]).find((v) => v !== null);
    if (lv !== undefined && lv !== null) {
      hlines.push({
        y: lv,
        color: seriesColor(ki),
        label: "steady-state level",
        cssClass: "eq13-level",
      });
    }
  });
  return { title, xLabel: "t", yLabel: "F-", series, hlines };
}

function buildFig2(inDir: string): string {
  const panelB = sweepPanel(
    readCsv(join(inDir, "fig2b.csv")),
    "coupling sweep",
    "eta="
  );
  const panelD = sweepPanel(
    readCsv(join(inDir, "fig2d.csv")),
    "Ohmicity sweep",
    "s="
  );
  const body =
    renderPanel(panelB, 0, 0, PANEL_W, PANEL_H) +
    "\n" +
    renderPanel(panelD, PANEL_W, 0, PANEL_W, PANEL_H);
  return svgDocument(2 * PANEL_W, PANEL_H, body);
}

function buildFig3(inDir: string): string {
  const table = readCsv(join(inDir, "fig3.csv"));
  const param = stringColumn(table, "param");
  const r = requiredNumberColumn(table, "r");
  const steady = requiredNumberColumn(table, "f_minus_steady");
  const predicted = requiredNumberColumn(table, "eq13_prediction");

  const groups = groupRows(param);
  const keys = sortedNumericKeys(groups);
  const series: Series[] = [];
  keys.forEach((key, ki) => {
    const idx = groups.get(key)!;
    series.push({
      label: `eta=${key} steady`,
      color: seriesColor(ki),
      points: idx.map((i) => ({ x: r[i], y: steady[i] })),
      markers: true,
    });
    series.push({
      label: `eta=${key} predicted`,
      color: seriesColor(ki),
      points: idx.map((i) => ({ x: r[i], y: predicted[i] })),
      dash: "7 4",
      cssClass: "eq13-prediction",
    });
  });
  const panel: Panel = {
    title: "steady-state resolution vs squeezing",
    xLabel: "r",
    yLabel: "F-",
    series,
  };
  return svgDocument(PANEL_W, PANEL_H, renderPanel(panel, 0, 0, PANEL_W, PANEL_H));
}

interface SpectrumMeta {
  sweep_parameter?: string;
  analytic_threshold?: { eta_c?: number };
}

function readSpectrumMeta(inDir: string): SpectrumMeta {
  try {
    return JSON.parse(readFileSync(join(inDir, "spectrum_meta.json"), "utf8"));
  } catch {
    return {};
  }
}

/** Existence boundaries: midpoints of consecutive params whose exists flag flips. */
function existenceBoundaries(param: number[], exists: string[]): number[] {
  const out: number[] = [];
  for (let i = 1; i < param.length; i++) {
    if (exists[i] !== exists[i - 1]) out.push((param[i] + param[i - 1]) / 2);
  }
  return out;
}

function buildSpectrum(inDir: string): string {
  const table = readCsv(join(inDir, "spectrum.csv"));
  const param = requiredNumberColumn(table, "param");
  const eB = numberColumn(table, "E_b");
  const z = numberColumn(table, "Z");
  const exists = stringColumn(table, "exists");
  const meta = readSpectrumMeta(inDir);
  const xLabel = meta.sweep_parameter ?? "param";

  const vlines: VLine[] = [];
  const etaC = meta.analytic_threshold?.eta_c;
  if (xLabel === "eta" && typeof etaC === "number") {
    vlines.push({ x: etaC, color: "#555", label: "threshold", cssClass: "threshold" });
  } else {
    for (const b of existenceBoundaries(param, exists)) {
      vlines.push({ x: b, color: "#555", label: "threshold", cssClass: "threshold" });
    }
  }

  const pick = (col: (number | null)[]) => {
    const pts = [];
    for (let i = 0; i < param.length; i++) {
      const v = col[i];
      if (v !== null) pts.push({ x: param[i], y: v });
    }
    return pts;
  };
  const ebPoints = pick(eB);
  const zPoints = pick(z);
  if (ebPoints.length === 0) {
    throw new CsvError(
      `${table.path}: no bound state anywhere in the sweep; nothing to plot`
    );
  }

  const panelTop: Panel = {
    title: "bound-state energy",
    xLabel,
    yLabel: "E_b",
    series: [{ label: "E_b", color: seriesColor(0), points: ebPoints, markers: true }],
    vlines,
  };
  const panelBottom: Panel = {
    title: "bound-state residue",
    xLabel,
    yLabel: "Z",
    series: [{ label: "Z", color: seriesColor(1), points: zPoints, markers: true }],
    vlines,
  };
  const body =
    renderPanel(panelTop, 0, 0, PANEL_W, PANEL_H) +
    "\n" +
    renderPanel(panelBottom, 0, PANEL_H, PANEL_W, PANEL_H);
  return svgDocument(PANEL_W, 2 * PANEL_H, body);
}

const BUILDERS: Record<string, (inDir: string) => string> = {
  fig1b: buildFig1b,
  fig2: buildFig2,
  fig3: buildFig3,
  spectrum: buildSpectrum,
};

export const FIGURE_NAMES = Object.keys(BUILDERS);

/** Renders one figure from the CSVs in inDir; writes <name>.svg into outDir.
 *  The SVG is fully assembled before any write, so a failed render leaves
 *  no output file behind. */
export function renderFigure(name: string, inDir: string, outDir: string): string {
  const builder = BUILDERS[name];
  if (!builder) {
    throw new CsvError(
      `unknown figure "${name}"; available: ${FIGURE_NAMES.join(", ")}`
    );
  }
  const svg = builder(inDir);
  mkdirSync(outDir, { recursive: true });
  const outPath = join(outDir, `${name}.svg`);
  writeFileSync(outPath, svg);
  return outPath;
}
