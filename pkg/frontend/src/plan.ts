/** Sampling-plan scatter from a run's manifest (and report, for the
 * starred showcase locations of rotation studies). */

export interface RunConfig {
    plan: string;
    plan_size: number;
    domain_min: number;
    domain_max: number;
}

export interface PlanFigureInput {
    config: RunConfig;
    /** starred trial locations, when the report carries any */
    trials: Array<[number, number]>;
}

export function planNodes1d(config: RunConfig): number[] {
    const { plan, plan_size: n, domain_min: a, domain_max: b } = config;
    if (!Number.isFinite(n) || n < 1) {
        throw new Error(`empty plan: plan_size must be at least 1, got ${n}`);
    }
    if (plan === "uniform") {
        if (n === 1) return [0.5 * (a + b)];
        const nodes: number[] = [];
        for (let i = 0; i < n; i++) nodes.push(a + ((b - a) * i) / (n - 1));
        return nodes;
    }
    if (plan === "chebyshev") {
        const nodes: number[] = [];
        for (let j = 1; j <= n; j++) {
            nodes.push(0.5 * (b - a) * Math.cos(((2 * j - 1) * Math.PI) / (2 * n)) + 0.5 * (a + b));
        }
        return nodes;
    }
    throw new Error(`unknown plan type ${plan}`);
}

export function planPoints(config: RunConfig): Array<[number, number]> {
    const nodes = planNodes1d(config);
    const points: Array<[number, number]> = [];
    for (const u of nodes) for (const v of nodes) points.push([u, v]);
    return points;
}

const SIZE = 420;
const MARGIN = 56;

function toPixel(value: number, lo: number, hi: number, flip: boolean): number {
    const t = (value - lo) / (hi - lo);
    const s = flip ? 1 - t : t;
    return MARGIN + s * (SIZE - 2 * MARGIN);
}

function star(cx: number, cy: number, r: number): string {
    const pts: string[] = [];
    for (let k = 0; k < 10; k++) {
        const radius = k % 2 === 0 ? r : 0.45 * r;
        const angle = (Math.PI / 5) * k - Math.PI / 2;
        pts.push(`${(cx + radius * Math.cos(angle)).toFixed(2)},` +
            `${(cy + radius * Math.sin(angle)).toFixed(2)}`);
    }
    return `<polygon class="trial" points="${pts.join(" ")}" fill="#d62728"/>`;
}

export function renderPlan(input: PlanFigureInput): string {
    const { config, trials } = input;
    const points = planPoints(config);
    const a = config.domain_min;
    const b = config.domain_max;
    const parts: string[] = [];
    parts.push(
        `<svg xmlns="http://www.w3.org/2000/svg" width="${SIZE}" height="${SIZE}" ` +
        `viewBox="0 0 ${SIZE} ${SIZE}" data-plan-points="${points.length}" ` +
        `font-family="sans-serif" font-size="12">`,
        `<rect width="${SIZE}" height="${SIZE}" fill="white"/>`,
        `<rect x="${MARGIN}" y="${MARGIN}" width="${SIZE - 2 * MARGIN}" ` +
        `height="${SIZE - 2 * MARGIN}" fill="none" stroke="black"/>`,
    );
    for (const [u, v] of points) {
        parts.push(
            `<circle class="node" cx="${toPixel(u, a, b, false).toFixed(2)}" ` +
            `cy="${toPixel(v, a, b, true).toFixed(2)}" r="3.5" fill="black"/>`,
        );
    }
    for (const [u, v] of trials) {
        parts.push(star(toPixel(u, a, b, false), toPixel(v, a, b, true), 7));
    }
    parts.push(
        `<text x="${SIZE / 2}" y="${SIZE - 14}" text-anchor="middle">&#969;&#8321;</text>`,
        `<text x="16" y="${SIZE / 2}" text-anchor="middle" ` +
        `transform="rotate(-90 16 ${SIZE / 2})">&#969;&#8322;</text>`,
        `<text x="${MARGIN}" y="${SIZE - 32}" text-anchor="middle">${a}</text>`,
        `<text x="${SIZE - MARGIN}" y="${SIZE - 32}" text-anchor="middle">${b}</text>`,
        "</svg>",
    );
    return parts.join("\n");
}
