import * as fs from "node:fs";
import * as os from "node:os";
import * as path from "node:path";
import { fileURLToPath } from "node:url";

import { beforeAll, describe, expect, it } from "vitest";

import { parseErrorsCsv, toGrid } from "../src/csv.js";
import { renderHeatmap } from "../src/heatmap.js";
import { planPoints, renderPlan } from "../src/plan.js";
import { plotErrorsToFile, plotPlanToFile } from "../src/io.js";
import { main as plotErrorsMain } from "../src/plotErrorsCli.js";

const HERE = path.dirname(fileURLToPath(import.meta.url));
const FIXTURE = path.join(HERE, "fixtures", "sphere_gauss");

function scaleMax(svg: string): number {
    const match = svg.match(/data-scale-max="([^"]+)"/);
    expect(match).not.toBeNull();
    return Number(match![1]);
}

function cellFills(svg: string): string[] {
    return [...svg.matchAll(/class="cell"[^/]*fill="(#[0-9a-f]{6})"/g)].map((m) => m[1]);
}

describe("heatmap rendering", () => {
    it("renders a constant column as a single color", () => {
        const text = [
            "omega_1,omega_2,err_bhi,err_thi,iters_bhi",
            "0,0,0.125,,",
            "0,1,0.125,,",
            "1,0,0.125,,",
            "1,1,0.125,,",
        ].join("\n");
        const svg = renderHeatmap(toGrid(parseErrorsCsv(text), "err_bhi"));
        const fills = cellFills(svg);
        expect(fills).toHaveLength(4);
        expect(new Set(fills).size).toBe(1);
        expect(scaleMax(svg)).toBe(0.125);
    });

    it("labels both parameter axes", () => {
        const text = "omega_1,omega_2,err_bhi,err_thi,iters_bhi\n0,0,1,,\n";
        const svg = renderHeatmap(toGrid(parseErrorsCsv(text), "err_bhi"));
        expect(svg).toContain("&#969;&#8321;");
        expect(svg).toContain("&#969;&#8322;");
    });

    it("rejects unknown colormaps", () => {
        const text = "omega_1,omega_2,err_bhi,err_thi,iters_bhi\n0,0,1,,\n";
        const grid = toGrid(parseErrorsCsv(text), "err_bhi");
        expect(() => renderHeatmap(grid, { colormap: "jet" })).toThrow(/colormap/);
    });
});

describe("reference study output", () => {
    let outDir: string;

    beforeAll(() => {
        outDir = fs.mkdtempSync(path.join(os.tmpdir(), "mhi-plots-"));
    });

    it("produces both error surfaces and keeps the input untouched", () => {
        const csvPath = path.join(FIXTURE, "errors.csv");
        const before = fs.readFileSync(csvPath);
        const bhiPath = path.join(outDir, "bhi.svg");
        const thiPath = path.join(outDir, "thi.svg");
        plotErrorsToFile({ csvPath, column: "err_bhi", outPath: bhiPath });
        plotErrorsToFile({ csvPath, column: "err_thi", outPath: thiPath });
        expect(fs.existsSync(bhiPath)).toBe(true);
        expect(fs.existsSync(thiPath)).toBe(true);
        expect(fs.readFileSync(csvPath).equals(before)).toBe(true);

        // tangent-space surface sits well below the barycentric one
        const bhiMax = scaleMax(fs.readFileSync(bhiPath, "utf8"));
        const thiMax = scaleMax(fs.readFileSync(thiPath, "utf8"));
        expect(thiMax).toBeLessThan(bhiMax);
        expect(bhiMax / thiMax).toBeGreaterThan(5);
    });

    it("rendering is idempotent", () => {
        const csvPath = path.join(FIXTURE, "errors.csv");
        const a = path.join(outDir, "a.svg");
        const b = path.join(outDir, "b.svg");
        plotErrorsToFile({ csvPath, column: "err_bhi", outPath: a });
        plotErrorsToFile({ csvPath, column: "err_bhi", outPath: b });
        expect(fs.readFileSync(a, "utf8")).toBe(fs.readFileSync(b, "utf8"));
    });

    it("missing column exits with an error through the CLI", () => {
        const status = plotErrorsMain([
            "--csv", path.join(FIXTURE, "errors.csv"),
            "--column", "err_nope",
            "--out", path.join(outDir, "nope.svg"),
        ]);
        expect(status).toBe(1);
        expect(fs.existsSync(path.join(outDir, "nope.svg"))).toBe(false);
    });

    it("plots the sampling plan from the manifest", () => {
        const out = path.join(outDir, "plan.svg");
        plotPlanToFile(FIXTURE, out);
        const svg = fs.readFileSync(out, "utf8");
        expect([...svg.matchAll(/class="node"/g)]).toHaveLength(9);
    });
});

describe("sampling-plan figures", () => {
    const cheb = { plan: "chebyshev", plan_size: 7, domain_min: -0.5, domain_max: 0.5 };

    it("builds the 49-point tensor plan", () => {
        const points = planPoints(cheb);
        expect(points).toHaveLength(49);
        for (const [u, v] of points) {
            expect(u).toBeGreaterThan(-0.5);
            expect(u).toBeLessThan(0.5);
            expect(v).toBeGreaterThan(-0.5);
            expect(v).toBeLessThan(0.5);
        }
    });

    it("rejects empty plans", () => {
        expect(() => planPoints({ ...cheb, plan_size: 0 })).toThrow(/empty plan/);
    });

    it("draws nodes and stars for a rotation run", () => {
        const dir = fs.mkdtempSync(path.join(os.tmpdir(), "mhi-run-"));
        fs.writeFileSync(
            path.join(dir, "manifest.json"),
            JSON.stringify({ config: cheb }),
        );
        fs.writeFileSync(
            path.join(dir, "report.json"),
            JSON.stringify({
                trial_rotations: [
                    { omega: [-0.3, -0.25] },
                    { omega: [0.0, 0.25] },
                    { omega: [0.3, -0.25] },
                ],
            }),
        );
        const out = path.join(dir, "plan.svg");
        plotPlanToFile(dir, out);
        const svg = fs.readFileSync(out, "utf8");
        expect([...svg.matchAll(/class="node"/g)]).toHaveLength(49);
        expect([...svg.matchAll(/class="trial"/g)]).toHaveLength(3);
    });

    it("renders uniform plans with endpoints on the box edge", () => {
        const svg = renderPlan({
            config: { plan: "uniform", plan_size: 3, domain_min: -1, domain_max: 1 },
            trials: [],
        });
        expect([...svg.matchAll(/class="node"/g)]).toHaveLength(9);
    });
});
