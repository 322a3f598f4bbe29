import { describe, expect, it } from 'vitest';
import { SCHEMAS, columnDiff, matchSchema } from '../src/schema.js';

describe('columnDiff', () => {
    it('reports missing and unexpected columns', () => {
        const diff = columnDiff(['a', 'b', 'c'], ['b', 'c', 'd']);
        expect(diff.missing).toEqual(['a']);
        expect(diff.unexpected).toEqual(['d']);
    });

    it('is empty for identical sets', () => {
        const diff = columnDiff(['a', 'b'], ['b', 'a']);
        expect(diff.missing).toEqual([]);
        expect(diff.unexpected).toEqual([]);
    });
});

describe('matchSchema', () => {
    it('accepts an exact header', () => {
        expect(matchSchema([...SCHEMAS.lowerbound], ['lowerbound', 'upperbound'])).toBe('lowerbound');
        expect(matchSchema([...SCHEMAS.upperbound], ['lowerbound', 'upperbound'])).toBe('upperbound');
    });

    it('names the closest schema and the column diff on mismatch', () => {
        expect(() => matchSchema([...SCHEMAS.clt], ['lowerbound', 'upperbound'])).toThrow(
            /closest is "lowerbound": missing columns \[theta_star\]; unexpected columns \[theta\]/,
        );
    });

    it('rejects a reordered header explicitly', () => {
        const shuffled = [...SCHEMAS.lowerbound].reverse();
        expect(() => matchSchema(shuffled, ['lowerbound'])).toThrow(/not in order/);
    });

    it('lists the accepted schemas in the error', () => {
        expect(() => matchSchema(['x'], ['clt'])).toThrow(/accepted: clt/);
    });
});
