const BASE = ['experiment', 'kind', 'N', 'trial', 'seed', 'statistic', 'value'];

/**
 * Column layouts of the CSV files the experiment runner writes.  Each figure
 * accepts a fixed subset of these; anything else is rejected with a column
 * diff so the caller can see exactly how the input deviates.
 */
export const SCHEMAS = {
    lowerbound: [...BASE, 'theta_star'],
    upperbound: [...BASE, 'theta_star', 'epsilon', 'subsample'],
    variancemax: [...BASE, 'theta_star', 'epsilon', 'subsample'],
    clt: [...BASE, 'theta'],
    gaussmax: [
        'experiment', 'n', 'eps', 'delta', 'trials', 'seed', 'threshold',
        'prob_below', 'count', 'mean', 'std', 'min', 'max', 'q05', 'q50', 'q95',
    ],
} as const;

export type SchemaName = keyof typeof SCHEMAS;

export type ColumnDiff = {
    missing: string[];
    unexpected: string[];
};

export function columnDiff(expected: readonly string[], actual: readonly string[]): ColumnDiff {
    const actualSet = new Set(actual);
    const expectedSet = new Set(expected);
    return {
        missing: expected.filter((c) => !actualSet.has(c)),
        unexpected: actual.filter((c) => !expectedSet.has(c)),
    };
}

function describeDiff(diff: ColumnDiff): string {
    const parts: string[] = [];
    if (diff.missing.length) {
        parts.push(`missing columns [${diff.missing.join(', ')}]`);
    }
    if (diff.unexpected.length) {
        parts.push(`unexpected columns [${diff.unexpected.join(', ')}]`);
    }
    return parts.length ? parts.join('; ') : 'columns match as a set but not in order';
}

/**
 * Match the header against the candidate schemas.  A match must have the
 * exact columns in the exact order.  On failure the error reports the diff
 * against the closest candidate (fewest missing + unexpected columns).
 */
export function matchSchema(columns: readonly string[], candidates: readonly SchemaName[]): SchemaName {
    if (!candidates.length) {
        throw new Error('no candidate schemas given');
    }
    let best: { name: SchemaName; diff: ColumnDiff; cost: number } | null = null;
    for (const name of candidates) {
        const expected = SCHEMAS[name];
        if (expected.length === columns.length && expected.every((c, i) => c === columns[i])) {
            return name;
        }
        const diff = columnDiff(expected, columns);
        const cost = diff.missing.length + diff.unexpected.length;
        if (best === null || cost < best.cost) {
            best = { name, diff, cost };
        }
    }
    const accepted = candidates.join(', ');
    throw new Error(
        `header does not match any accepted schema (accepted: ${accepted}); `
        + `closest is "${best!.name}": ${describeDiff(best!.diff)}`,
    );
}
