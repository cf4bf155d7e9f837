/** SVG heatmap of one error column over the evaluation lattice. */

import { SurfaceGrid } from "./csv.js";
import { colorAt } from "./colormap.js";

export interface HeatmapOptions {
    title?: string;
    colormap?: string;
    width?: number;
    height?: number;
}

const MARGIN = { left: 64, right: 96, top: 40, bottom: 48 };

function fmt(v: number): string {
    return Number.isInteger(v) ? String(v) : v.toPrecision(4);
}

export function renderHeatmap(grid: SurfaceGrid, options: HeatmapOptions = {}): string {
    const cmap = options.colormap ?? "viridis";
    const width = options.width ?? 560;
    const height = options.height ?? 480;
    const plotW = width - MARGIN.left - MARGIN.right;
    const plotH = height - MARGIN.top - MARGIN.bottom;
    const n1 = grid.x.length;
    const n2 = grid.y.length;

    let maxValue = 0;
    for (const row of grid.values) for (const v of row) maxValue = Math.max(maxValue, v);
    const scaleMax = maxValue > 0 ? maxValue : 1;

    const parts: string[] = [];
    parts.push(
        `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" ` +
        `viewBox="0 0 ${width} ${height}" data-scale-max="${maxValue}" ` +
        `data-colormap="${cmap}" font-family="sans-serif" font-size="12">`,
    );
    parts.push(`<rect width="${width}" height="${height}" fill="white"/>`);
    if (options.title) {
        parts.push(
            `<text x="${MARGIN.left + plotW / 2}" y="20" text-anchor="middle" ` +
            `font-size="14">${options.title}</text>`,
        );
    }

    // cells: first axis left-to-right, second axis bottom-to-top
    const cellW = plotW / n1;
    const cellH = plotH / n2;
    for (let i = 0; i < n1; i++) {
        for (let j = 0; j < n2; j++) {
            const fill = colorAt(cmap, grid.values[i][j] / scaleMax);
            const cx = MARGIN.left + i * cellW;
            const cy = MARGIN.top + plotH - (j + 1) * cellH;
            parts.push(
                `<rect class="cell" x="${cx.toFixed(2)}" y="${cy.toFixed(2)}" ` +
                `width="${(cellW + 0.35).toFixed(2)}" height="${(cellH + 0.35).toFixed(2)}" ` +
                `fill="${fill}"/>`,
            );
        }
    }

    // axes
    const axisY = MARGIN.top + plotH;
    parts.push(
        `<line x1="${MARGIN.left}" y1="${axisY}" x2="${MARGIN.left + plotW}" ` +
        `y2="${axisY}" stroke="black"/>`,
        `<line x1="${MARGIN.left}" y1="${MARGIN.top}" x2="${MARGIN.left}" ` +
        `y2="${axisY}" stroke="black"/>`,
        `<text x="${MARGIN.left}" y="${axisY + 18}" text-anchor="middle">${fmt(grid.x[0])}</text>`,
        `<text x="${MARGIN.left + plotW}" y="${axisY + 18}" text-anchor="middle">${fmt(grid.x[n1 - 1])}</text>`,
        `<text x="${MARGIN.left + plotW / 2}" y="${axisY + 34}" text-anchor="middle">&#969;&#8321;</text>`,
        `<text x="${MARGIN.left - 8}" y="${axisY}" text-anchor="end">${fmt(grid.y[0])}</text>`,
        `<text x="${MARGIN.left - 8}" y="${MARGIN.top + 10}" text-anchor="end">${fmt(grid.y[n2 - 1])}</text>`,
        `<text x="${MARGIN.left - 40}" y="${MARGIN.top + plotH / 2}" text-anchor="middle" ` +
        `transform="rotate(-90 ${MARGIN.left - 40} ${MARGIN.top + plotH / 2})">&#969;&#8322;</text>`,
    );

    // color bar with the scale maximum labelled
    const barX = MARGIN.left + plotW + 24;
    const barW = 16;
    const steps = 48;
    for (let s = 0; s < steps; s++) {
        const t = s / (steps - 1);
        const y = MARGIN.top + plotH - ((s + 1) * plotH) / steps;
        parts.push(
            `<rect x="${barX}" y="${y.toFixed(2)}" width="${barW}" ` +
            `height="${(plotH / steps + 0.35).toFixed(2)}" fill="${colorAt(cmap, t)}"/>`,
        );
    }
    parts.push(
        `<text class="scale-max" x="${barX + barW + 6}" y="${MARGIN.top + 10}">` +
        `${maxValue.toExponential(3)}</text>`,
        `<text x="${barX + barW + 6}" y="${MARGIN.top + plotH}">0</text>`,
    );
    parts.push("</svg>");
    return parts.join("\n");
}
