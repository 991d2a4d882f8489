/**
 * Chart building: per-experiment series with median aggregation over
 * seeds, rendered to a self-contained SVG string. Output depends only on
 * the input rows, so identical CSVs render byte-identical images.
 */

import { BenchRow, plottedValue } from './csv.js';

export interface Series {
  structure: string;
  points: Array<{ n: number; y: number }>; // sorted by n
}

export interface Chart {
  experiment: string;
  series: Series[];
  yLabel: string;
}

export function median(values: number[]): number {
  const sorted = [...values].sort((a, b) => a - b);
  const mid = sorted.length >> 1;
  return sorted.length % 2 ? sorted[mid] : (sorted[mid - 1] + sorted[mid]) / 2;
}

/**
 * Group rows into one chart per experiment (in first-appearance order),
 * one series per structure, one point per distinct n holding the median
 * over all rows that share (experiment, structure, n). Sizes with no row
 * for some structure are simply absent from that series.
 */
export function buildCharts(rows: BenchRow[]): Chart[] {
  const experiments = new Map<string, Map<string, Map<number, number[]>>>();
  for (const row of rows) {
    let structures = experiments.get(row.experiment);
    if (!structures) {
      structures = new Map();
      experiments.set(row.experiment, structures);
    }
    let sizes = structures.get(row.structure);
    if (!sizes) {
      sizes = new Map();
      structures.set(row.structure, sizes);
    }
    const values = sizes.get(row.n) ?? [];
    values.push(plottedValue(row));
    sizes.set(row.n, values);
  }
  const charts: Chart[] = [];
  for (const [experiment, structures] of experiments) {
    const series: Series[] = [];
    for (const [structure, sizes] of structures) {
      const points = [...sizes.entries()]
        .map(([n, values]) => ({ n, y: median(values) }))
        .sort((a, b) => a.n - b.n);
      series.push({ structure, points });
    }
    charts.push({
      experiment,
      series,
      yLabel: experiment === 'simulate' ? 'transfers' : 'ns per op',
    });
  }
  return charts;
}

const WIDTH = 860;
const HEIGHT = 520;
const MARGIN = { top: 48, right: 200, bottom: 56, left: 76 };

const PALETTE = [
  '#1f77b4', '#d62728', '#2ca02c', '#9467bd',
  '#ff7f0e', '#8c564b', '#17becf', '#7f7f7f',
];

function fmt(value: number): string {
  return Number.isInteger(value) ? String(value) : value.toFixed(2);
}

function esc(text: string): string {
  return text
    .replace(/&/g, '&amp;')
    .replace(/</g, '&lt;')
    .replace(/>/g, '&gt;');
}

/** Evenly spread tick values over [0, top]. */
function yTicks(top: number, count = 5): number[] {
  const ticks: number[] = [];
  for (let i = 0; i <= count; i++) {
    ticks.push((top * i) / count);
  }
  return ticks;
}

export function renderSvg(chart: Chart): string {
  const xs = chart.series.flatMap((s) => s.points.map((p) => Math.log2(p.n)));
  const ys = chart.series.flatMap((s) => s.points.map((p) => p.y));
  const xMin = Math.min(...xs);
  const xMax = Math.max(...xs);
  const yTop = Math.max(...ys, 1e-9) * 1.05;
  const plotW = WIDTH - MARGIN.left - MARGIN.right;
  const plotH = HEIGHT - MARGIN.top - MARGIN.bottom;
  const sx = (logN: number): number =>
    MARGIN.left + (xMax === xMin ? plotW / 2 : ((logN - xMin) / (xMax - xMin)) * plotW);
  const sy = (y: number): number => MARGIN.top + plotH - (y / yTop) * plotH;

  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${WIDTH}" height="${HEIGHT}" ` +
    `viewBox="0 0 ${WIDTH} ${HEIGHT}" font-family="sans-serif">`,
  );
  parts.push(`<rect width="${WIDTH}" height="${HEIGHT}" fill="white"/>`);
  parts.push(
    `<text x="${MARGIN.left}" y="28" font-size="18">${esc(chart.experiment)}</text>`,
  );

  // axes
  const x0 = MARGIN.left;
  const y0 = MARGIN.top + plotH;
  parts.push(
    `<line x1="${x0}" y1="${y0}" x2="${x0 + plotW}" y2="${y0}" stroke="black"/>`,
    `<line x1="${x0}" y1="${MARGIN.top}" x2="${x0}" y2="${y0}" stroke="black"/>`,
  );
  for (const tick of yTicks(yTop)) {
    const y = sy(tick);
    parts.push(
      `<line x1="${x0 - 4}" y1="${fmt(y)}" x2="${x0 + plotW}" y2="${fmt(y)}" ` +
      `stroke="#dddddd"/>`,
      `<text x="${x0 - 8}" y="${fmt(y + 4)}" font-size="11" ` +
      `text-anchor="end">${fmt(tick)}</text>`,
    );
  }
  const exponents = [...new Set(xs.map((x) => Math.round(x)))].sort((a, b) => a - b);
  for (const e of exponents) {
    const x = sx(e);
    parts.push(
      `<line x1="${fmt(x)}" y1="${y0}" x2="${fmt(x)}" y2="${y0 + 4}" stroke="black"/>`,
      `<text x="${fmt(x)}" y="${y0 + 18}" font-size="11" ` +
      `text-anchor="middle">2^${e}</text>`,
    );
  }
  parts.push(
    `<text x="${x0 + plotW / 2}" y="${HEIGHT - 12}" font-size="13" ` +
    `text-anchor="middle">n (log2 scale)</text>`,
    `<text x="20" y="${MARGIN.top + plotH / 2}" font-size="13" ` +
    `transform="rotate(-90 20 ${MARGIN.top + plotH / 2})" ` +
    `text-anchor="middle">${esc(chart.yLabel)}</text>`,
  );

  chart.series.forEach((series, i) => {
    const color = PALETTE[i % PALETTE.length];
    const coords = series.points
      .map((p) => `${fmt(sx(Math.log2(p.n)))},${fmt(sy(p.y))}`)
      .join(' ');
    parts.push(
      `<polyline fill="none" stroke="${color}" stroke-width="1.8" points="${coords}"/>`,
    );
    for (const p of series.points) {
      parts.push(
        `<circle cx="${fmt(sx(Math.log2(p.n)))}" cy="${fmt(sy(p.y))}" r="2.6" ` +
        `fill="${color}"/>`,
      );
    }
    // legend row
    const ly = MARGIN.top + 10 + i * 20;
    const lx = WIDTH - MARGIN.right + 16;
    parts.push(
      `<rect x="${lx}" y="${ly - 9}" width="14" height="4" fill="${color}"/>`,
      `<text x="${lx + 20}" y="${ly}" font-size="12" ` +
      `class="legend">${esc(series.structure)}</text>`,
    );
  });

  parts.push('</svg>');
  return parts.join('\n') + '\n';
}
