/** Small self-contained sequential colormaps. */

type Rgb = [number, number, number];

const VIRIDIS: Rgb[] = [
    [68, 1, 84],
    [71, 44, 122],
    [59, 81, 139],
    [44, 113, 142],
    [33, 144, 141],
    [39, 173, 129],
    [92, 200, 99],
    [170, 220, 50],
    [253, 231, 37],
];

const GREYS: Rgb[] = [
    [250, 250, 250],
    [130, 130, 130],
    [10, 10, 10],
];

const MAPS: Record<string, Rgb[]> = { viridis: VIRIDIS, greys: GREYS };

export function colormapNames(): string[] {
    return Object.keys(MAPS);
}

/** Interpolated color for t in [0, 1] as a #rrggbb string. */
export function colorAt(name: string, t: number): string {
    const stops = MAPS[name];
    if (!stops) {
        throw new Error(`unknown colormap ${name}; available: ${colormapNames().join(", ")}`);
    }
    const clamped = Math.min(1, Math.max(0, t));
    const pos = clamped * (stops.length - 1);
    const lo = Math.floor(pos);
    const hi = Math.min(stops.length - 1, lo + 1);
    const frac = pos - lo;
    const mix = stops[lo].map((c, i) => Math.round(c + frac * (stops[hi][i] - c)));
    return "#" + mix.map((c) => c.toString(16).padStart(2, "0")).join("");
}
