export type Table = {
    columns: string[];
    rows: string[][];
};

/**
 * Parse a simple comma-separated file: one header line followed by data
 * rows.  The experiment outputs never quote fields (every cell is a number,
 * a plain identifier, or empty), so no quoting rules are needed here.
 * Accepts both LF and CRLF line endings and an optional trailing newline.
 */
export function parseCsv(text: string): Table {
    const lines = text.split(/\r?\n/);
    while (lines.length && lines[lines.length - 1] === '') {
        lines.pop();
    }
    if (!lines.length) {
        throw new Error('empty input: no header line');
    }
    const columns = lines[0].split(',');
    const rows: string[][] = [];
    for (let i = 1; i < lines.length; i++) {
        const cells = lines[i].split(',');
        if (cells.length !== columns.length) {
            throw new Error(
                `line ${i + 1}: expected ${columns.length} cells, got ${cells.length}`,
            );
        }
        rows.push(cells);
    }
    return { columns, rows };
}

export function columnIndex(table: Table, name: string): number {
    const idx = table.columns.indexOf(name);
    if (idx < 0) {
        throw new Error(`no column named "${name}" (have: ${table.columns.join(', ')})`);
    }
    return idx;
}

export function column(table: Table, name: string): string[] {
    const idx = columnIndex(table, name);
    return table.rows.map((row) => row[idx]);
}

/** Numeric view of a column; every cell must parse as a finite number. */
export function numberColumn(table: Table, name: string): number[] {
    const idx = columnIndex(table, name);
    return table.rows.map((row, i) => {
        const value = Number(row[idx]);
        if (row[idx] === '' || !Number.isFinite(value)) {
            throw new Error(`row ${i + 1}, column "${name}": not a finite number: "${row[idx]}"`);
        }
        return value;
    });
}

/** Distinct values of a column, in first-seen order. */
export function distinct(values: string[]): string[] {
    const seen = new Set<string>();
    const out: string[] = [];
    for (const v of values) {
        if (!seen.has(v)) {
            seen.add(v);
            out.push(v);
        }
    }
    return out;
}
