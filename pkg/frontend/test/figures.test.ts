import { readFileSync } from 'node:fs';
import { describe, expect, it } from 'vitest';
import { Table, parseCsv } from '../src/csv.js';
import {
    REFERENCE_LINES,
    makeFigure,
    makeHistogramFigure,
    makeQqFigure,
    makeScalingFigure,
    makeTrendFigure,
} from '../src/figures.js';

function loadFixture(name: string): Table {
    return parseCsv(readFileSync(new URL(`../fixtures/${name}`, import.meta.url), 'utf8'));
}

function count(haystack: string, needle: string): number {
    return haystack.split(needle).length - 1;
}

describe('makeScalingFigure', () => {
    const table = loadFixture('lowerbound_steinhaus.csv');

    it('draws every trial plus one median point per N', () => {
        const svg = makeScalingFigure(table);
        expect(svg.startsWith('<svg')).toBe(true);
        // 40 trial dots + 5 per-N median dots.
        expect(count(svg, '<circle')).toBe(45);
        expect(svg).toContain('per-N median');
    });

    it('marks both constant reference lines', () => {
        const svg = makeScalingFigure(table);
        expect(svg).toContain('4/29 = 0.13793');
        expect(svg).toContain('4*sqrt(6)/(29*pi) = 0.10754');
        expect(REFERENCE_LINES[0].value).toBeCloseTo(4 / 29, 12);
        expect(REFERENCE_LINES[1].value).toBeCloseTo(0.10754438637705876, 12);
    });

    it('prints the N ticks as exact integers', () => {
        const svg = makeScalingFigure(table);
        expect(svg).toContain('>16384<');
        expect(svg).not.toContain('>16380<');
    });

    it('accepts the wider columns written by the rough-filtered runs', () => {
        const svg = makeScalingFigure(loadFixture('upperbound_trend.csv'));
        expect(svg).toContain('normalized_max');
    });

    it('is deterministic for a fixed input', () => {
        expect(makeScalingFigure(table)).toBe(makeScalingFigure(table));
    });

    it('rejects other layouts with a column diff', () => {
        expect(() => makeScalingFigure(loadFixture('clt_samples.csv'))).toThrow(
            /missing columns \[theta_star\]; unexpected columns \[theta\]/,
        );
    });

    it('rejects a header-only file', () => {
        const empty = parseCsv('experiment,kind,N,trial,seed,statistic,value,theta_star\n');
        expect(() => makeScalingFigure(empty)).toThrow(/no data rows/);
    });
});

describe('makeHistogramFigure', () => {
    const table = loadFixture('clt_samples.csv');

    it('draws bars and the density overlay', () => {
        const svg = makeHistogramFigure(table);
        expect(svg.startsWith('<svg')).toBe(true);
        expect(count(svg, '<rect')).toBeGreaterThan(5);
        expect(svg).toContain('standard normal density');
        expect(svg).toContain('N = 4096');
        expect(svg).toContain('samples = 400');
    });

    it('reports the KS distance row when present', () => {
        expect(makeHistogramFigure(table)).toContain('KS distance: 0.03814');
    });

    it('rejects empty data', () => {
        const empty = parseCsv('experiment,kind,N,trial,seed,statistic,value,theta\n');
        expect(() => makeHistogramFigure(empty)).toThrow(/no data rows/);
    });
});

describe('makeQqFigure', () => {
    it('plots one point per sample against the identity line', () => {
        const svg = makeQqFigure(loadFixture('clt_samples.csv'));
        expect(count(svg, '<circle')).toBe(400);
        expect(svg).toContain('y = x');
        expect(svg).toContain('standard normal quantiles');
    });
});

describe('makeTrendFigure', () => {
    it('carries epsilon from the file into the axis label', () => {
        const svg = makeTrendFigure(loadFixture('variancemax_trend.csv'));
        expect(svg).toContain('epsilon = 0.25');
        expect(svg).toContain('per-N max');
        expect(svg).toContain('normalized_var_max');
    });

    it('tabulates one row per N', () => {
        const svg = makeTrendFigure(loadFixture('upperbound_trend.csv'));
        for (const n of [1024, 2048, 4096, 8192, 16384]) {
            expect(svg).toContain(`>${n}<`);
        }
    });

    it('rejects empty data explicitly', () => {
        const empty = parseCsv(
            'experiment,kind,N,trial,seed,statistic,value,theta_star,epsilon,subsample\n',
        );
        expect(() => makeTrendFigure(empty)).toThrow(/no data rows/);
    });

    it('rejects the summary layout of the correlated-maximum runs', () => {
        expect(() => makeTrendFigure(loadFixture('gaussmax_summary.csv'))).toThrow(/closest is/);
    });
});

describe('makeFigure', () => {
    it('dispatches by kind with the same schema checks', () => {
        const clt = loadFixture('clt_samples.csv');
        expect(makeFigure('qqplot', clt).startsWith('<svg')).toBe(true);
        expect(() => makeFigure('trend', clt)).toThrow(/closest is/);
    });
});
