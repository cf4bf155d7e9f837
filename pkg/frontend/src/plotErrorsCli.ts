#!/usr/bin/env node
/** plot-errors --csv <errors.csv> --column err_bhi --out fig.svg */

import { parseArgs } from "node:util";

import { plotErrorsToFile } from "./io.js";

export function main(argv: string[]): number {
    let values;
    try {
        ({ values } = parseArgs({
            args: argv,
            options: {
                csv: { type: "string" },
                column: { type: "string" },
                out: { type: "string" },
                title: { type: "string" },
                colormap: { type: "string", default: "viridis" },
            },
        }));
    } catch (err) {
        console.error(`error: ${(err as Error).message}`);
        return 2;
    }
    if (!values.csv || !values.column || !values.out) {
        console.error("usage: plot-errors --csv <path> --column <name> --out <image.svg>");
        return 2;
    }
    try {
        plotErrorsToFile({
            csvPath: values.csv,
            column: values.column,
            outPath: values.out,
            title: values.title,
            colormap: values.colormap,
        });
    } catch (err) {
        console.error(`error: ${(err as Error).message}`);
        return 1;
    }
    return 0;
}

if (import.meta.url === `file://${process.argv[1]}`) {
    process.exit(main(process.argv.slice(2)));
}
