/**
 * Parser for the benchmark CSV schema:
 *
 *   experiment,structure,n,seed,total_ns,ns_per_op,extra
 *
 * Strict by design: the header must match exactly and every row must carry
 * seven well-typed fields. Errors name the offending 1-based line.
 */

export const HEADER = 'experiment,structure,n,seed,total_ns,ns_per_op,extra';

export interface BenchRow {
  experiment: string;
  structure: string;
  n: number;
  seed: number;
  totalNs: number;
  nsPerOp: number;
  extra: string;
}

export class CsvError extends Error {
  readonly line: number;

  constructor(line: number, detail: string) {
    super(`line ${line}: ${detail}`);
    this.name = 'CsvError';
    this.line = line;
  }
}

function integer(raw: string, line: number, field: string): number {
  if (!/^-?\d+$/.test(raw)) {
    throw new CsvError(line, `${field} must be an integer, got '${raw}'`);
  }
  return Number(raw);
}

function decimal(raw: string, line: number, field: string): number {
  const value = Number(raw);
  if (raw.trim() === '' || Number.isNaN(value)) {
    throw new CsvError(line, `${field} must be numeric, got '${raw}'`);
  }
  return value;
}

export function parseBenchCsv(text: string): BenchRow[] {
  const lines = text.split(/\r?\n/);
  while (lines.length && lines[lines.length - 1] === '') {
    lines.pop();
  }
  if (lines.length === 0 || lines[0] !== HEADER) {
    throw new CsvError(1, `header must be exactly '${HEADER}'`);
  }
  const rows: BenchRow[] = [];
  for (let i = 1; i < lines.length; i++) {
    const lineNo = i + 1;
    const parts = lines[i].split(',');
    if (parts.length !== 7) {
      throw new CsvError(lineNo, `expected 7 fields, got ${parts.length}`);
    }
    const [experiment, structure, n, seed, totalNs, nsPerOp, extra] = parts;
    if (experiment === '' || structure === '') {
      throw new CsvError(lineNo, 'experiment and structure must be non-empty');
    }
    rows.push({
      experiment,
      structure,
      n: integer(n, lineNo, 'n'),
      seed: integer(seed, lineNo, 'seed'),
      totalNs: integer(totalNs, lineNo, 'total_ns'),
      nsPerOp: decimal(nsPerOp, lineNo, 'ns_per_op'),
      extra,
    });
  }
  return rows;
}

/**
 * Value to plot for a row: nanoseconds per operation, except simulation
 * rows, which carry a transfer count in `extra` as `...;transfers=<x>`.
 */
export function plottedValue(row: BenchRow): number {
  if (row.experiment === 'simulate') {
    const match = /(?:^|;)transfers=([^;]+)$/.exec(row.extra);
    if (match) {
      const value = Number(match[1]);
      if (!Number.isNaN(value)) {
        return value;
      }
    }
  }
  return row.nsPerOp;
}
