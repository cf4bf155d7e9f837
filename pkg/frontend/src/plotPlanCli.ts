#!/usr/bin/env node
/** plot-plan --report <run-dir-or-manifest.json> --out plan.svg */

import { parseArgs } from "node:util";

import { plotPlanToFile } from "./io.js";

export function main(argv: string[]): number {
    let values;
    try {
        ({ values } = parseArgs({
            args: argv,
            options: {
                report: { type: "string" },
                out: { type: "string" },
            },
        }));
    } catch (err) {
        console.error(`error: ${(err as Error).message}`);
        return 2;
    }
    if (!values.report || !values.out) {
        console.error("usage: plot-plan --report <run dir or manifest.json> --out <image.svg>");
        return 2;
    }
    try {
        plotPlanToFile(values.report, values.out);
    } catch (err) {
        console.error(`error: ${(err as Error).message}`);
        return 1;
    }
    return 0;
}

if (import.meta.url === `file://${process.argv[1]}`) {
    process.exit(main(process.argv.slice(2)));
}
