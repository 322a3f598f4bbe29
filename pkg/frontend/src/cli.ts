import { existsSync, readFileSync, writeFileSync } from 'node:fs';
import { parseArgs } from 'node:util';
import { parseCsv } from './csv.js';
import { FIGURE_KINDS, FigureKind, makeFigure } from './figures.js';

export const USAGE = `usage: rmfplot <kind> --in <csv> --out <svg> [--force]

kinds:
  scaling     per-trial values vs N with per-N median (lowerbound/upperbound files)
  histogram   sample distribution with standard normal overlay (clt files)
  qqplot      sample quantiles vs standard normal quantiles (clt files)
  trend       per-N max of the normalized statistic vs N (upperbound/variancemax files)

Refuses to overwrite --out unless --force is given.  Input files are only
ever read.`;

/** Entry point; returns the process exit code (0 ok, 1 runtime, 2 usage). */
export function run(argv: readonly string[], log: (msg: string) => void = console.error): number {
    const [kind, ...rest] = argv;
    if (!kind || kind === 'help' || kind === '--help' || kind === '-h') {
        log(USAGE);
        return kind ? 0 : 2;
    }
    if (!(FIGURE_KINDS as string[]).includes(kind)) {
        log(`error: unknown figure kind "${kind}" (expected one of: ${FIGURE_KINDS.join(', ')})`);
        log(USAGE);
        return 2;
    }
    let values: { in?: string; out?: string; force?: boolean };
    try {
        values = parseArgs({
            args: [...rest],
            options: {
                in: { type: 'string' },
                out: { type: 'string' },
                force: { type: 'boolean', default: false },
            },
            allowPositionals: false,
        }).values;
    } catch (err) {
        log(`error: ${(err as Error).message}`);
        log(USAGE);
        return 2;
    }
    if (!values.in || !values.out) {
        log('error: both --in and --out are required');
        log(USAGE);
        return 2;
    }

    let text: string;
    try {
        text = readFileSync(values.in, 'utf8');
    } catch (err) {
        log(`error: can't read ${values.in}: ${(err as Error).message}`);
        return 1;
    }
    if (existsSync(values.out) && !values.force) {
        log(`error: ${values.out} already exists; pass --force to overwrite`);
        return 1;
    }
    let svg: string;
    let rows: number;
    try {
        const table = parseCsv(text);
        rows = table.rows.length;
        svg = makeFigure(kind as FigureKind, table);
    } catch (err) {
        log(`error: ${(err as Error).message}`);
        return 1;
    }
    try {
        writeFileSync(values.out, svg, 'utf8');
    } catch (err) {
        log(`error: can't write ${values.out}: ${(err as Error).message}`);
        return 1;
    }
    log(`wrote ${values.out} (${kind}, ${rows} data rows)`);
    return 0;
}
