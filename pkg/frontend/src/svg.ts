export type Attrs = Record<string, string | number>;

export function esc(text: string): string {
    return text
        .replace(/&/g, '&amp;')
        .replace(/</g, '&lt;')
        .replace(/>/g, '&gt;')
        .replace(/"/g, '&quot;');
}

function fmtAttr(value: string | number): string {
    if (typeof value === 'string') {
        return esc(value);
    }
    // Trim float noise from computed coordinates.
    return String(Math.round(value * 100) / 100);
}

/** Build one element; children are raw SVG, so escape text with esc(). */
export function el(tag: string, attrs: Attrs, children: string[] = []): string {
    const pairs = Object.entries(attrs).map(([k, v]) => `${k}="${fmtAttr(v)}"`);
    const open = pairs.length ? `<${tag} ${pairs.join(' ')}` : `<${tag}`;
    return children.length ? `${open}>${children.join('')}</${tag}>` : `${open}/>`;
}

export type Scale = (value: number) => number;

export function linearScale(d0: number, d1: number, r0: number, r1: number): Scale {
    const span = d1 - d0 || 1;
    return (v) => r0 + ((v - d0) / span) * (r1 - r0);
}

export function logScale(d0: number, d1: number, r0: number, r1: number): Scale {
    if (!(d0 > 0 && d1 > 0)) {
        throw new Error(`log scale needs a positive domain, got [${d0}, ${d1}]`);
    }
    const l0 = Math.log(d0);
    const span = Math.log(d1) - l0 || 1;
    return (v) => r0 + ((Math.log(v) - l0) / span) * (r1 - r0);
}

/** Round ticks covering [lo, hi] with steps of 1, 2 or 5 times a power of 10. */
export function niceTicks(lo: number, hi: number, target = 5): number[] {
    if (!(hi > lo)) {
        return [lo];
    }
    const raw = (hi - lo) / Math.max(1, target);
    const mag = Math.pow(10, Math.floor(Math.log10(raw)));
    const norm = raw / mag;
    const step = mag * (norm < 1.5 ? 1 : norm < 3.5 ? 2 : norm < 7.5 ? 5 : 10);
    const ticks: number[] = [];
    for (let v = Math.ceil(lo / step) * step; v <= hi + step * 1e-9; v += step) {
        ticks.push(Math.abs(v) < step * 1e-9 ? 0 : v);
    }
    return ticks;
}

/** Compact label for an axis tick or legend value. */
export function fmtNum(value: number, digits = 4): string {
    if (value === 0) {
        return '0';
    }
    if (Number.isInteger(value) && Math.abs(value) < 1e15) {
        return String(value);
    }
    const abs = Math.abs(value);
    if (abs >= 1e5 || abs < 1e-3) {
        return value.toExponential(Math.max(0, digits - 2));
    }
    return String(parseFloat(value.toPrecision(digits)));
}

export type Box = {
    left: number;
    right: number;
    top: number;
    bottom: number;
};

export type AxisSpec = {
    box: Box;
    x: Scale;
    y: Scale;
    xTicks: number[];
    yTicks: number[];
    xLabel: string;
    yLabel: string;
    xFmt?: (v: number) => string;
    yFmt?: (v: number) => string;
};

/** Plot frame: border, tick marks and labels, y gridlines, axis titles. */
export function axes(spec: AxisSpec): string[] {
    const { box, x, y, xTicks, yTicks } = spec;
    const xFmt = spec.xFmt ?? fmtNum;
    const yFmt = spec.yFmt ?? fmtNum;
    const parts: string[] = [];
    for (const t of yTicks) {
        const py = y(t);
        parts.push(el('line', {
            x1: box.left, x2: box.right, y1: py, y2: py,
            stroke: '#dddddd', 'stroke-width': 1,
        }));
        parts.push(el('text', {
            x: box.left - 8, y: py + 4, 'text-anchor': 'end',
            'font-size': 12, fill: '#333333',
        }, [esc(yFmt(t))]));
    }
    for (const t of xTicks) {
        const px = x(t);
        parts.push(el('line', {
            x1: px, x2: px, y1: box.bottom, y2: box.bottom + 5,
            stroke: '#333333', 'stroke-width': 1,
        }));
        parts.push(el('text', {
            x: px, y: box.bottom + 20, 'text-anchor': 'middle',
            'font-size': 12, fill: '#333333',
        }, [esc(xFmt(t))]));
    }
    parts.push(el('rect', {
        x: box.left, y: box.top,
        width: box.right - box.left, height: box.bottom - box.top,
        fill: 'none', stroke: '#333333', 'stroke-width': 1,
    }));
    parts.push(el('text', {
        x: (box.left + box.right) / 2, y: box.bottom + 42,
        'text-anchor': 'middle', 'font-size': 13, fill: '#000000',
    }, [esc(spec.xLabel)]));
    parts.push(el('text', {
        x: 16, y: (box.top + box.bottom) / 2, 'text-anchor': 'middle',
        'font-size': 13, fill: '#000000',
        transform: `rotate(-90 16 ${Math.round((box.top + box.bottom) / 2)})`,
    }, [esc(spec.yLabel)]));
    return parts;
}

export function document(width: number, height: number, title: string, body: string[]): string {
    const children = [
        el('rect', { x: 0, y: 0, width, height, fill: '#ffffff' }),
        el('text', {
            x: width / 2, y: 22, 'text-anchor': 'middle',
            'font-size': 15, 'font-weight': 'bold', fill: '#000000',
        }, [esc(title)]),
        el('g', { 'font-family': 'sans-serif' }, body),
    ];
    return el('svg', {
        xmlns: 'http://www.w3.org/2000/svg',
        width,
        height,
        viewBox: `0 0 ${width} ${height}`,
    }, children) + '\n';
}

export function polyline(points: Array<[number, number]>, attrs: Attrs): string {
    const coords = points
        .map(([px, py]) => `${Math.round(px * 100) / 100},${Math.round(py * 100) / 100}`)
        .join(' ');
    return el('polyline', { points: coords, fill: 'none', ...attrs });
}
