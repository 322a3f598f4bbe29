import { Table, column, columnIndex, distinct, numberColumn } from './csv.js';
import { SchemaName, matchSchema } from './schema.js';
import { freedmanDiaconis, median, normalPdf, normalQuantile } from './stats.js';
import { Box, axes, document, el, esc, fmtNum, linearScale, logScale, niceTicks, polyline } from './svg.js';

export type FigureKind = 'scaling' | 'histogram' | 'qqplot' | 'trend';

export const FIGURE_KINDS: FigureKind[] = ['scaling', 'histogram', 'qqplot', 'trend'];

/** Which CSV layouts each figure accepts. */
export const FIGURE_SCHEMAS: Record<FigureKind, SchemaName[]> = {
    scaling: ['lowerbound', 'upperbound'],
    histogram: ['clt'],
    qqplot: ['clt'],
    trend: ['upperbound', 'variancemax'],
};

/** Horizontal references drawn on the scaling figure. */
export const REFERENCE_LINES = [
    { label: '4/29', value: 4 / 29, color: '#228833' },
    { label: '4*sqrt(6)/(29*pi)', value: (4 * Math.sqrt(6)) / (29 * Math.PI), color: '#aa3377' },
] as const;

const WIDTH = 720;
const HEIGHT = 480;
const BOX: Box = { left: 70, right: WIDTH - 30, top: 40, bottom: HEIGHT - 70 };

function requireRows(table: Table): void {
    if (!table.rows.length) {
        throw new Error('no data rows in input');
    }
}

function groupByN(ns: readonly number[], values: readonly number[]): Array<{ n: number; values: number[] }> {
    const groups = new Map<number, number[]>();
    for (let i = 0; i < ns.length; i++) {
        const bucket = groups.get(ns[i]);
        if (bucket) {
            bucket.push(values[i]);
        } else {
            groups.set(ns[i], [values[i]]);
        }
    }
    return [...groups.entries()]
        .sort((a, b) => a[0] - b[0])
        .map(([n, vs]) => ({ n, values: vs }));
}

/** Pad a degenerate (single-N) log domain so the scale stays usable. */
function logDomain(ns: readonly number[]): [number, number] {
    const lo = Math.min(...ns);
    const hi = Math.max(...ns);
    return lo === hi ? [lo / 2, hi * 2] : [lo, hi];
}

function thinnedTicks(values: number[], maxCount = 12): number[] {
    const sorted = distinct(values.map(String)).map(Number).sort((a, b) => a - b);
    if (sorted.length <= maxCount) {
        return sorted;
    }
    const stride = Math.ceil(sorted.length / maxCount);
    return sorted.filter((_, i) => i % stride === 0 || i === sorted.length - 1);
}

function legend(entries: Array<{ color: string; label: string; dashed?: boolean }>): string[] {
    const parts: string[] = [];
    entries.forEach((entry, i) => {
        const y = BOX.top + 16 + 18 * i;
        parts.push(el('line', {
            x1: BOX.right - 190, x2: BOX.right - 166, y1: y - 4, y2: y - 4,
            stroke: entry.color, 'stroke-width': 3,
            ...(entry.dashed ? { 'stroke-dasharray': '6 4' } : {}),
        }));
        parts.push(el('text', {
            x: BOX.right - 160, y, 'font-size': 12, fill: '#333333',
        }, [esc(entry.label)]));
    });
    return parts;
}

/**
 * Per-trial values against N on a log-x axis, with the per-N median drawn
 * as a line and the two constant references marked.
 */
export function makeScalingFigure(table: Table): string {
    matchSchema(table.columns, FIGURE_SCHEMAS.scaling);
    requireRows(table);
    const ns = numberColumn(table, 'N');
    const values = numberColumn(table, 'value');
    const experiment = distinct(column(table, 'experiment')).join(', ');
    const kinds = distinct(column(table, 'kind')).join(', ');
    const statistic = distinct(column(table, 'statistic')).join(', ');

    const [nLo, nHi] = logDomain(ns);
    const yHi = 1.05 * Math.max(...values, ...REFERENCE_LINES.map((r) => r.value));
    const x = logScale(nLo, nHi, BOX.left + 20, BOX.right - 20);
    const y = linearScale(0, yHi, BOX.bottom, BOX.top);

    const body: string[] = axes({
        box: BOX, x, y,
        xTicks: thinnedTicks(ns),
        yTicks: niceTicks(0, yHi),
        xLabel: 'N (log scale)',
        yLabel: statistic,
    });
    for (let i = 0; i < ns.length; i++) {
        body.push(el('circle', {
            cx: x(ns[i]), cy: y(values[i]), r: 3,
            fill: '#4477aa', 'fill-opacity': 0.45,
        }));
    }
    const medians = groupByN(ns, values).map(
        (g) => [x(g.n), y(median(g.values))] as [number, number],
    );
    body.push(polyline(medians, { stroke: '#cc3311', 'stroke-width': 2 }));
    for (const [px, py] of medians) {
        body.push(el('circle', { cx: px, cy: py, r: 4, fill: '#cc3311' }));
    }
    for (const ref of REFERENCE_LINES) {
        body.push(el('line', {
            x1: BOX.left, x2: BOX.right, y1: y(ref.value), y2: y(ref.value),
            stroke: ref.color, 'stroke-width': 1.5, 'stroke-dasharray': '7 5',
        }));
        body.push(el('text', {
            x: BOX.left + 6, y: y(ref.value) - 5, 'font-size': 11, fill: ref.color,
        }, [esc(`${ref.label} = ${fmtNum(ref.value, 5)}`)]));
    }
    body.push(...legend([
        { color: '#4477aa', label: 'per-trial value' },
        { color: '#cc3311', label: 'per-N median' },
    ]));
    return document(WIDTH, HEIGHT, `${experiment} scaling: ${statistic} vs N (${kinds})`, body);
}

function cltSamples(table: Table): { thetaValues: number[]; bigN: string; ks: string | null } {
    const statIdx = columnIndex(table, 'statistic');
    const valueIdx = columnIndex(table, 'value');
    const nIdx = columnIndex(table, 'N');
    const thetaValues: number[] = [];
    const bigNs: string[] = [];
    let ks: string | null = null;
    for (const row of table.rows) {
        if (row[statIdx] === 'ks_distance') {
            ks = row[valueIdx];
            continue;
        }
        const v = Number(row[valueIdx]);
        if (!Number.isFinite(v)) {
            throw new Error(`non-numeric value cell: "${row[valueIdx]}"`);
        }
        thetaValues.push(v);
        bigNs.push(row[nIdx]);
    }
    if (!thetaValues.length) {
        throw new Error('no per-point sample rows in input');
    }
    return { thetaValues, bigN: distinct(bigNs).join(', '), ks };
}

/**
 * Histogram of the per-point samples (Freedman-Diaconis bins) with a
 * standard normal density overlay scaled to count units.
 */
export function makeHistogramFigure(table: Table): string {
    matchSchema(table.columns, FIGURE_SCHEMAS.histogram);
    requireRows(table);
    const statistic = distinct(column(table, 'statistic')).filter((s) => s !== 'ks_distance').join(', ');
    const { thetaValues, bigN, ks } = cltSamples(table);
    const hist = freedmanDiaconis(thetaValues);
    const n = thetaValues.length;

    const xLo = Math.min(hist.edges[0], -4);
    const xHi = Math.max(hist.edges[hist.edges.length - 1], 4);
    const curveScale = n * hist.binWidth;
    const yHi = 1.1 * Math.max(...hist.counts, normalPdf(0) * curveScale);
    const x = linearScale(xLo, xHi, BOX.left, BOX.right);
    const y = linearScale(0, yHi, BOX.bottom, BOX.top);

    const body: string[] = axes({
        box: BOX, x, y,
        xTicks: niceTicks(xLo, xHi, 8),
        yTicks: niceTicks(0, yHi),
        xLabel: statistic,
        yLabel: 'count',
    });
    for (let i = 0; i < hist.counts.length; i++) {
        if (!hist.counts[i]) {
            continue;
        }
        body.push(el('rect', {
            x: x(hist.edges[i]),
            y: y(hist.counts[i]),
            width: x(hist.edges[i + 1]) - x(hist.edges[i]),
            height: y(0) - y(hist.counts[i]),
            fill: '#4477aa', 'fill-opacity': 0.8, stroke: '#ffffff', 'stroke-width': 0.5,
        }));
    }
    const curve: Array<[number, number]> = [];
    for (let i = 0; i <= 200; i++) {
        const vx = xLo + ((xHi - xLo) * i) / 200;
        curve.push([x(vx), y(normalPdf(vx) * curveScale)]);
    }
    body.push(polyline(curve, { stroke: '#cc3311', 'stroke-width': 2 }));
    body.push(...legend([
        { color: '#4477aa', label: `samples (${n})` },
        { color: '#cc3311', label: 'standard normal density' },
    ]));
    if (ks !== null) {
        body.push(el('text', {
            x: BOX.right - 190, y: BOX.top + 16 + 18 * 2, 'font-size': 12, fill: '#333333',
        }, [esc(`KS distance: ${fmtNum(Number(ks), 4)}`)]));
    }
    return document(WIDTH, HEIGHT, `distribution of ${statistic} (N = ${bigN}, samples = ${n})`, body);
}

/** Sample quantiles of the per-point samples against standard normal quantiles. */
export function makeQqFigure(table: Table): string {
    matchSchema(table.columns, FIGURE_SCHEMAS.qqplot);
    requireRows(table);
    const statistic = distinct(column(table, 'statistic')).filter((s) => s !== 'ks_distance').join(', ');
    const { thetaValues, bigN } = cltSamples(table);
    const sample = [...thetaValues].sort((a, b) => a - b);
    const n = sample.length;
    const theoretical = sample.map((_, i) => normalQuantile((i + 0.5) / n));

    const lo = Math.min(sample[0], theoretical[0]);
    const hi = Math.max(sample[n - 1], theoretical[n - 1]);
    const pad = 0.05 * (hi - lo || 1);
    const x = linearScale(lo - pad, hi + pad, BOX.left, BOX.right);
    const y = linearScale(lo - pad, hi + pad, BOX.bottom, BOX.top);

    const body: string[] = axes({
        box: BOX, x, y,
        xTicks: niceTicks(lo, hi, 7),
        yTicks: niceTicks(lo, hi, 7),
        xLabel: 'standard normal quantiles',
        yLabel: `sample quantiles (${statistic})`,
    });
    body.push(el('line', {
        x1: x(lo - pad), y1: y(lo - pad), x2: x(hi + pad), y2: y(hi + pad),
        stroke: '#888888', 'stroke-width': 1.5, 'stroke-dasharray': '6 4',
    }));
    for (let i = 0; i < n; i++) {
        body.push(el('circle', {
            cx: x(theoretical[i]), cy: y(sample[i]), r: 2.5,
            fill: '#4477aa', 'fill-opacity': 0.7,
        }));
    }
    body.push(...legend([{ color: '#888888', label: 'y = x', dashed: true }]));
    return document(WIDTH, HEIGHT, `normal Q-Q: ${statistic} (N = ${bigN}, samples = ${n})`, body);
}

/**
 * Per-N maximum of the normalized statistic against N on a log-x axis,
 * with per-trial values shown faint and a summary table underneath.
 */
export function makeTrendFigure(table: Table): string {
    matchSchema(table.columns, FIGURE_SCHEMAS.trend);
    requireRows(table);
    const ns = numberColumn(table, 'N');
    const values = numberColumn(table, 'value');
    const experiment = distinct(column(table, 'experiment')).join(', ');
    const statistic = distinct(column(table, 'statistic')).join(', ');
    const epsilon = distinct(column(table, 'epsilon')).join(', ');

    const groups = groupByN(ns, values);
    const tableTop = HEIGHT - 6;
    const rowHeight = 17;
    const height = tableTop + rowHeight * (groups.length + 1) + 14;

    const [nLo, nHi] = logDomain(ns);
    const yHi = 1.05 * Math.max(...values);
    const x = logScale(nLo, nHi, BOX.left + 20, BOX.right - 20);
    const y = linearScale(0, yHi, BOX.bottom, BOX.top);

    const body: string[] = axes({
        box: BOX, x, y,
        xTicks: thinnedTicks(ns),
        yTicks: niceTicks(0, yHi),
        xLabel: 'N (log scale)',
        yLabel: `${statistic}, epsilon = ${epsilon}`,
    });
    for (let i = 0; i < ns.length; i++) {
        body.push(el('circle', {
            cx: x(ns[i]), cy: y(values[i]), r: 3,
            fill: '#777777', 'fill-opacity': 0.5,
        }));
    }
    const maxima = groups.map((g) => [x(g.n), y(Math.max(...g.values))] as [number, number]);
    body.push(polyline(maxima, { stroke: '#004488', 'stroke-width': 2.5 }));
    for (const [px, py] of maxima) {
        body.push(el('rect', {
            x: px - 3.5, y: py - 3.5, width: 7, height: 7, fill: '#004488',
        }));
    }
    body.push(...legend([
        { color: '#777777', label: 'per-trial value' },
        { color: '#004488', label: 'per-N max' },
    ]));

    const cols = [BOX.left, BOX.left + 170, BOX.left + 340];
    const header = ['N', 'trials', `max ${statistic}`];
    header.forEach((text, j) => {
        body.push(el('text', {
            x: cols[j], y: tableTop, 'font-size': 12, 'font-weight': 'bold',
            'font-family': 'monospace', fill: '#000000',
        }, [esc(text)]));
    });
    groups.forEach((g, i) => {
        const cells = [String(g.n), String(g.values.length), fmtNum(Math.max(...g.values), 6)];
        cells.forEach((text, j) => {
            body.push(el('text', {
                x: cols[j], y: tableTop + rowHeight * (i + 1), 'font-size': 12,
                'font-family': 'monospace', fill: '#333333',
            }, [esc(text)]));
        });
    });
    return document(WIDTH, height, `${experiment} trend: per-N max of ${statistic}`, body);
}

const BUILDERS: Record<FigureKind, (table: Table) => string> = {
    scaling: makeScalingFigure,
    histogram: makeHistogramFigure,
    qqplot: makeQqFigure,
    trend: makeTrendFigure,
};

export function makeFigure(kind: FigureKind, table: Table): string {
    return BUILDERS[kind](table);
}
