/** Parsing of `errors.csv` files written by the interpolation runner. */

export interface ErrorTable {
    header: string[];
    /** column name -> one entry per row; empty cells become null */
    columns: Map<string, Array<number | null>>;
    rows: number;
}

export interface SurfaceGrid {
    /** sorted distinct first-axis values (grid rows) */
    x: number[];
    /** sorted distinct second-axis values (grid columns) */
    y: number[];
    /** values[i][j] at (x[i], y[j]) */
    values: number[][];
}

export function parseErrorsCsv(text: string): ErrorTable {
    const lines = text.split(/\r?\n/).filter((line) => line.length > 0);
    if (lines.length === 0) throw new Error("empty CSV file");
    const header = lines[0].split(",").map((h) => h.trim());
    const columns = new Map<string, Array<number | null>>(
        header.map((name) => [name, []]),
    );
    for (let i = 1; i < lines.length; i++) {
        const cells = lines[i].split(",");
        if (cells.length !== header.length) {
            throw new Error(
                `row ${i} has ${cells.length} cells, expected ${header.length}`,
            );
        }
        for (let c = 0; c < header.length; c++) {
            const raw = cells[c].trim();
            if (raw === "") {
                columns.get(header[c])!.push(null);
                continue;
            }
            const value = Number(raw);
            if (!Number.isFinite(value)) {
                throw new Error(`row ${i}, column ${header[c]}: cannot parse ${raw}`);
            }
            columns.get(header[c])!.push(value);
        }
    }
    return { header, columns, rows: lines.length - 1 };
}

function distinctSorted(values: number[]): number[] {
    return [...new Set(values)].sort((a, b) => a - b);
}

/**
 * Arrange one column on the rectangular evaluation lattice.
 *
 * Fails loudly when the requested column is absent or empty, and when the
 * rows do not form a complete rectangle.
 */
export function toGrid(table: ErrorTable, column: string): SurfaceGrid {
    if (!table.columns.has(column)) {
        throw new Error(
            `column ${column} not in CSV header (${table.header.join(", ")})`,
        );
    }
    const w1 = table.columns.get("omega_1") as number[];
    const w2 = table.columns.get("omega_2") as number[];
    if (!w1 || !w2) throw new Error("CSV lacks omega_1/omega_2 columns");
    const raw = table.columns.get(column)!;
    if (raw.every((v) => v === null)) {
        throw new Error(`column ${column} is present but empty (method not run)`);
    }

    const x = distinctSorted(w1);
    const y = distinctSorted(w2);
    if (x.length * y.length !== table.rows) {
        throw new Error(
            `ragged grid: ${x.length} x ${y.length} lattice needs ` +
            `${x.length * y.length} rows, found ${table.rows}`,
        );
    }
    const xIndex = new Map(x.map((v, i) => [v, i]));
    const yIndex = new Map(y.map((v, i) => [v, i]));
    const values: number[][] = x.map(() => new Array(y.length).fill(NaN));
    const seen: boolean[][] = x.map(() => new Array(y.length).fill(false));
    for (let r = 0; r < table.rows; r++) {
        const i = xIndex.get(w1[r])!;
        const j = yIndex.get(w2[r])!;
        const v = raw[r];
        if (v === null) throw new Error(`column ${column}: empty cell in row ${r + 1}`);
        if (seen[i][j]) throw new Error(`duplicate grid point in row ${r + 1}`);
        seen[i][j] = true;
        values[i][j] = v;
    }
    return { x, y, values };
}
