/**
 * `render <csv> <out_dir>`: one `<experiment>.svg` per experiment present
 * in a benchmark CSV. Exit code 0 only when at least one chart was
 * written; diagnostics go to stderr as a single line.
 */

import * as fs from 'node:fs';
import * as path from 'node:path';

import { buildCharts } from './chart.js';
import { CsvError, parseBenchCsv } from './csv.js';
import { renderSvg } from './chart.js';

export interface Io {
  error(message: string): void;
}

export function run(args: string[], io: Io = { error: (m) => console.error(m) }): number {
  if (args.length !== 2) {
    io.error('usage: render <csv> <out_dir>');
    return 2;
  }
  const [csvPath, outDir] = args;
  let text: string;
  try {
    text = fs.readFileSync(csvPath, 'utf8');
  } catch (err) {
    io.error(`cannot read ${csvPath}: ${(err as Error).message}`);
    return 2;
  }
  let charts;
  try {
    const rows = parseBenchCsv(text);
    if (rows.length === 0) {
      io.error(`${csvPath}: no data rows, nothing to render`);
      return 1;
    }
    charts = buildCharts(rows);
  } catch (err) {
    if (err instanceof CsvError) {
      io.error(`${csvPath}: ${err.message}`);
      return 2;
    }
    throw err;
  }
  try {
    fs.mkdirSync(outDir, { recursive: true });
    for (const chart of charts) {
      const target = path.join(outDir, `${chart.experiment}.svg`);
      fs.writeFileSync(target, renderSvg(chart), 'utf8');
    }
  } catch (err) {
    io.error(`cannot write charts: ${(err as Error).message}`);
    return 2;
  }
  return 0;
}
