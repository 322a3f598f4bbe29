export function median(values: readonly number[]): number {
    return quantile(values, 0.5);
}

/** Quantile with linear interpolation between order statistics. */
export function quantile(values: readonly number[], p: number): number {
    if (!values.length) {
        throw new Error("can't take a quantile of an empty array");
    }
    if (!(p >= 0 && p <= 1)) {
        throw new Error(`quantile level must be in [0, 1], got ${p}`);
    }
    const sorted = [...values].sort((a, b) => a - b);
    const h = (sorted.length - 1) * p;
    const lo = Math.floor(h);
    const hi = Math.ceil(h);
    return sorted[lo] + (h - lo) * (sorted[hi] - sorted[lo]);
}

export type Histogram = {
    /** Bin boundaries; edges.length === counts.length + 1. */
    edges: number[];
    counts: number[];
    binWidth: number;
};

/**
 * Histogram with the Freedman-Diaconis rule: bin width 2*IQR/n^(1/3).
 * Falls back to Sturges (ceil(log2 n) + 1 bins) when the IQR is zero.
 * The last bin includes its right edge, so every sample lands in a bin.
 */
export function freedmanDiaconis(values: readonly number[]): Histogram {
    if (!values.length) {
        throw new Error("can't build a histogram of an empty array");
    }
    const min = Math.min(...values);
    const max = Math.max(...values);
    const iqr = quantile(values, 0.75) - quantile(values, 0.25);
    let width = (2 * iqr) / Math.cbrt(values.length);
    let bins: number;
    if (width > 0 && max > min) {
        bins = Math.min(400, Math.ceil((max - min) / width));
    } else {
        bins = Math.ceil(Math.log2(values.length)) + 1;
    }
    bins = Math.max(1, bins);
    const span = max > min ? max - min : 1;
    width = span / bins;
    const edges = Array.from({ length: bins + 1 }, (_, i) => min + i * width);
    const counts = new Array<number>(bins).fill(0);
    for (const v of values) {
        const j = Math.min(Math.floor((v - min) / width), bins - 1);
        counts[j] += 1;
    }
    return { edges, counts, binWidth: width };
}

const SQRT_TWO_PI = Math.sqrt(2 * Math.PI);

export function normalPdf(x: number): number {
    return Math.exp(-0.5 * x * x) / SQRT_TWO_PI;
}

// Rational approximation of the standard normal quantile (Acklam's
// coefficients; relative error below 1.2e-9 everywhere, ample for drawing).
const ICDF_A = [
    -3.969683028665376e+01, 2.209460984245205e+02, -2.759285104469687e+02,
    1.383577518672690e+02, -3.066479806614716e+01, 2.506628277459239e+00,
];
const ICDF_B = [
    -5.447609879822406e+01, 1.615858368580409e+02, -1.556989798598866e+02,
    6.680131188771972e+01, -1.328068155288572e+01,
];
const ICDF_C = [
    -7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e+00,
    -2.549732539343734e+00, 4.374664141464968e+00, 2.938163982698783e+00,
];
const ICDF_D = [
    7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e+00,
    3.754408661907416e+00,
];
const ICDF_SPLIT = 0.02425;

function polyval(coeffs: readonly number[], x: number): number {
    let acc = 0;
    for (const c of coeffs) {
        acc = acc * x + c;
    }
    return acc;
}

export function normalQuantile(p: number): number {
    if (!(p > 0 && p < 1)) {
        throw new Error(`quantile argument must be in (0, 1), got ${p}`);
    }
    if (p < ICDF_SPLIT) {
        const q = Math.sqrt(-2 * Math.log(p));
        return polyval(ICDF_C, q) / (polyval(ICDF_D, q) * q + 1);
    }
    if (p > 1 - ICDF_SPLIT) {
        const q = Math.sqrt(-2 * Math.log(1 - p));
        return -polyval(ICDF_C, q) / (polyval(ICDF_D, q) * q + 1);
    }
    const q = p - 0.5;
    const r = q * q;
    return (polyval(ICDF_A, r) * q) / (polyval(ICDF_B, r) * r + 1);
}
