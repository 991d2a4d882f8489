import * as fs from 'node:fs';
import * as os from 'node:os';
import * as path from 'node:path';

import { afterEach, beforeEach, describe, expect, it } from 'vitest';

import { run } from '../src/cli.js';
import { HEADER } from '../src/csv.js';

let dir: string;
let errors: string[];
const io = { error: (m: string) => errors.push(m) };

beforeEach(() => {
  dir = fs.mkdtempSync(path.join(os.tmpdir(), 'cotree-render-'));
  errors = [];
});

afterEach(() => {
  fs.rmSync(dir, { recursive: true, force: true });
});

function writeCsv(name: string, rows: string[]): string {
  const p = path.join(dir, name);
  fs.writeFileSync(p, [HEADER, ...rows].join('\n') + '\n');
  return p;
}

// 2 experiments x 3 structures x 4 sizes
const sweepRows: string[] = [];
for (const experiment of ['inorder_insert', 'random_traverse']) {
  for (const structure of ['small_bfs', 'small_veb', 'btree16']) {
    for (const exp of [10, 11, 12, 13]) {
      sweepRows.push(
        `${experiment},${structure},${2 ** exp},0,${1000 * exp},${exp}.500,`,
      );
    }
  }
}

describe('render CLI', () => {
  it('writes one svg per experiment with one series per structure', () => {
    const csvPath = writeCsv('sweep.csv', sweepRows);
    const out = path.join(dir, 'charts');
    expect(run([csvPath, out], io)).toBe(0);
    const files = fs.readdirSync(out).sort();
    expect(files).toEqual(['inorder_insert.svg', 'random_traverse.svg']);
    for (const file of files) {
      const svg = fs.readFileSync(path.join(out, file), 'utf8');
      expect(svg.match(/<polyline /g)).toHaveLength(3);
      expect(svg.match(/class="legend"/g)).toHaveLength(3);
    }
  });

  it('renders byte-identically on rerun', () => {
    const csvPath = writeCsv('sweep.csv', sweepRows);
    const outA = path.join(dir, 'a');
    const outB = path.join(dir, 'b');
    expect(run([csvPath, outA], io)).toBe(0);
    expect(run([csvPath, outB], io)).toBe(0);
    for (const file of fs.readdirSync(outA)) {
      expect(fs.readFileSync(path.join(outA, file), 'utf8'))
        .toBe(fs.readFileSync(path.join(outB, file), 'utf8'));
    }
  });

  it('fails on an empty CSV without writing anything', () => {
    const csvPath = writeCsv('empty.csv', []);
    const out = path.join(dir, 'charts');
    expect(run([csvPath, out], io)).not.toBe(0);
    expect(fs.existsSync(out)).toBe(false);
    expect(errors.join('\n')).toMatch(/no data rows/);
  });

  it('reports the offending line of a malformed CSV', () => {
    const csvPath = writeCsv('bad.csv', [sweepRows[0], 'not,a,row']);
    expect(run([csvPath, path.join(dir, 'charts')], io)).toBe(2);
    expect(errors.join('\n')).toMatch(/line 3/);
  });

  it('rejects a missing file and bad usage', () => {
    expect(run([path.join(dir, 'nope.csv'), dir], io)).toBe(2);
    expect(errors.join('\n')).toMatch(/cannot read/);
    expect(run([], io)).toBe(2);
    expect(run(['one'], io)).toBe(2);
  });

  it('aggregates seeds sharing (experiment, structure, n) by median', () => {
    const csvPath = writeCsv('seeds.csv', [
      'random_insert,splay,1024,0,10,5.0,',
      'random_insert,splay,1024,1,10,11.0,',
      'random_insert,splay,1024,2,10,6.0,',
    ]);
    const out = path.join(dir, 'charts');
    expect(run([csvPath, out], io)).toBe(0);
    const svg = fs.readFileSync(path.join(out, 'random_insert.svg'), 'utf8');
    expect(svg.match(/<circle /g)).toHaveLength(1);
  });
});
