/** File-level entry points shared by the two CLIs. */

import * as fs from "node:fs";
import * as path from "node:path";

import { parseErrorsCsv, toGrid } from "./csv.js";
import { renderHeatmap } from "./heatmap.js";
import { PlanFigureInput, RunConfig, renderPlan } from "./plan.js";

export interface PlotErrorsJob {
    csvPath: string;
    column: string;
    outPath: string;
    title?: string;
    colormap?: string;
}

export function plotErrorsToFile(job: PlotErrorsJob): void {
    const text = fs.readFileSync(job.csvPath, "utf8");
    const grid = toGrid(parseErrorsCsv(text), job.column);
    const svg = renderHeatmap(grid, { title: job.title, colormap: job.colormap });
    fs.writeFileSync(job.outPath, svg + "\n");
}

/** Accepts a run output directory or a path to its manifest.json. */
export function loadPlanInput(reportPath: string): PlanFigureInput {
    let dir = reportPath;
    let manifestPath = reportPath;
    if (fs.statSync(reportPath).isDirectory()) {
        manifestPath = path.join(reportPath, "manifest.json");
    } else {
        dir = path.dirname(reportPath);
    }
    const manifest = JSON.parse(fs.readFileSync(manifestPath, "utf8"));
    const config = manifest.config as RunConfig | null;
    if (!config || config.plan === undefined) {
        throw new Error(`manifest at ${manifestPath} carries no usable config echo`);
    }
    const trials: Array<[number, number]> = [];
    const reportJson = path.join(dir, "report.json");
    if (fs.existsSync(reportJson)) {
        const report = JSON.parse(fs.readFileSync(reportJson, "utf8"));
        for (const entry of report.trial_rotations ?? []) {
            trials.push([entry.omega[0], entry.omega[1]]);
        }
    }
    return { config, trials };
}

export function plotPlanToFile(reportPath: string, outPath: string): void {
    const svg = renderPlan(loadPlanInput(reportPath));
    fs.writeFileSync(outPath, svg + "\n");
}
