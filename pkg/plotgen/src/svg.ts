import * as fs from "fs";
import { SweepSeries } from "./csv";

export interface PlotJob {
  series: SweepSeries[]; // one curve per CSV, legend from labels
  db: boolean; // ordinate: |H| (linear) or 20 log10 |H|
  range?: [number, number]; // optional frequency window [Hz]
  out: string; // output SVG path
}

export interface Curve {
  label: string;
  color: string;
  nu: number[];
  y: number[]; // plotted ordinates after range clipping
}

export interface Figure {
  svg: string;
  curves: Curve[];
}

// style constants; the rendered file is a pure function of the job and these
const WIDTH = 960;
const HEIGHT = 540;
const ML = 76;
const MR = 24;
const MT = 24;
const MB = 56;
const COLORS = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"];
const FONT = "font-family=\"sans-serif\" font-size=\"13\"";

function minOf(v: number[]): number {
  let m = Infinity;
  for (const x of v) m = Math.min(m, x);
  return m;
}

function maxOf(v: number[]): number {
  let m = -Infinity;
  for (const x of v) m = Math.max(m, x);
  return m;
}

/** round tick positions at a 1/2/5 decade step, covering [lo, hi] */
function niceTicks(lo: number, hi: number, target = 6): number[] {
  const raw = (hi - lo) / target;
  const mag = Math.pow(10, Math.floor(Math.log10(raw)));
  const norm = raw / mag;
  const step = mag * (norm <= 1 ? 1 : norm <= 2 ? 2 : norm <= 5 ? 5 : 10);
  const ticks: number[] = [];
  for (let k = Math.ceil(lo / step - 1e-9); k * step <= hi + step * 1e-9; k++) {
    ticks.push(k * step);
  }
  return ticks;
}

function fmtTick(v: number): string {
  if (Math.abs(v) < 1e-12) return "0";
  const a = Math.abs(v);
  if (a >= 1e4 || a < 1e-3) return v.toExponential(1).replace("e+", "e");
  return String(parseFloat(v.toPrecision(6)));
}

function escapeText(s: string): string {
  return s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

function buildSvg(curves: Curve[], db: boolean): string {
  const xlo0 = minOf(curves.map((c) => minOf(c.nu)));
  const xhi0 = maxOf(curves.map((c) => maxOf(c.nu)));
  const ylo0 = minOf(curves.map((c) => minOf(c.y)));
  const yhi0 = maxOf(curves.map((c) => maxOf(c.y)));
  const xpad = xhi0 > xlo0 ? 0 : 0.5;
  const xlo = xlo0 - xpad;
  const xhi = xhi0 + xpad;
  // magnitudes are nonnegative, so the linear axis is anchored at zero;
  // the dB axis floats with the data
  const yspan0 = yhi0 > ylo0 ? yhi0 - ylo0 : Math.abs(yhi0) + 1;
  const ylo = db ? ylo0 - 0.05 * yspan0 : 0;
  const yhi = yhi0 + 0.05 * yspan0;

  const iw = WIDTH - ML - MR;
  const ih = HEIGHT - MT - MB;
  const sx = (v: number) => ML + ((v - xlo) / (xhi - xlo)) * iw;
  const sy = (v: number) => MT + (1 - (v - ylo) / (yhi - ylo)) * ih;

  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${WIDTH}" height="${HEIGHT}" viewBox="0 0 ${WIDTH} ${HEIGHT}">`,
  );
  parts.push(`<rect width="${WIDTH}" height="${HEIGHT}" fill="white"/>`);

  for (const t of niceTicks(xlo, xhi)) {
    const x = sx(t).toFixed(2);
    parts.push(
      `<line x1="${x}" y1="${MT}" x2="${x}" y2="${MT + ih}" stroke="#dddddd" stroke-width="1"/>`,
    );
    parts.push(
      `<text x="${x}" y="${MT + ih + 20}" ${FONT} text-anchor="middle">${fmtTick(t)}</text>`,
    );
  }
  for (const t of niceTicks(ylo, yhi)) {
    const y = sy(t).toFixed(2);
    parts.push(
      `<line x1="${ML}" y1="${y}" x2="${ML + iw}" y2="${y}" stroke="#dddddd" stroke-width="1"/>`,
    );
    parts.push(
      `<text x="${ML - 8}" y="${y}" ${FONT} text-anchor="end" dominant-baseline="middle">${fmtTick(t)}</text>`,
    );
  }

  parts.push(
    `<rect x="${ML}" y="${MT}" width="${iw}" height="${ih}" fill="none" stroke="#333333" stroke-width="1"/>`,
  );
  parts.push(
    `<text x="${ML + iw / 2}" y="${HEIGHT - 14}" ${FONT} text-anchor="middle">frequency [Hz]</text>`,
  );
  const ylabel = db ? "|H| [dB]" : "|H|";
  parts.push(
    `<text x="20" y="${MT + ih / 2}" ${FONT} text-anchor="middle" transform="rotate(-90 20 ${MT + ih / 2})">${ylabel}</text>`,
  );

  for (const c of curves) {
    const d: string[] = [];
    for (let i = 0; i < c.nu.length; i++) {
      d.push(`${i === 0 ? "M" : "L"}${sx(c.nu[i]).toFixed(2)} ${sy(c.y[i]).toFixed(2)}`);
    }
    parts.push(
      `<path d="${d.join(" ")}" fill="none" stroke="${c.color}" stroke-width="1.5"/>`,
    );
  }

  const lx = ML + iw - 160;
  let ly = MT + 14;
  for (const c of curves) {
    parts.push(
      `<line x1="${lx}" y1="${ly}" x2="${lx + 28}" y2="${ly}" stroke="${c.color}" stroke-width="2"/>`,
    );
    parts.push(
      `<text x="${lx + 34}" y="${ly}" ${FONT} dominant-baseline="middle">${escapeText(c.label)}</text>`,
    );
    ly += 20;
  }

  parts.push("</svg>");
  return parts.join("\n") + "\n";
}

/**
 * Render one magnitude-vs-frequency figure, one curve per input series, and
 * write it to job.out. Returns the SVG text plus the plotted data arrays so
 * callers can inspect exactly what was drawn. Nothing is written when the
 * job has no plottable rows.
 */
export function renderMagnitude(job: PlotJob): Figure {
  if (job.series.length === 0) {
    throw new Error("empty data: no CSVs to plot");
  }
  const curves: Curve[] = job.series.map((s, i) => {
    const nu: number[] = [];
    const y: number[] = [];
    const src = job.db ? s.magDb : s.mag;
    for (let k = 0; k < s.nu.length; k++) {
      if (job.range && (s.nu[k] < job.range[0] || s.nu[k] > job.range[1])) continue;
      nu.push(s.nu[k]);
      y.push(src[k]);
    }
    if (nu.length === 0) {
      throw new Error(`empty data: no plottable rows in '${s.label}'`);
    }
    return { label: s.label, color: COLORS[i % COLORS.length], nu, y };
  });
  const svg = buildSvg(curves, job.db);
  fs.writeFileSync(job.out, svg);
  return { svg, curves };
}
