/**
 * Minimal deterministic SVG chart builder: fixed canvas, numeric axes with
 * rounded tick values, line/band/bar marks, and a small legend.  Output is
 * plain markup with six-decimal coordinates, so identical inputs produce
 * byte-identical files.
 */

export const WIDTH = 760;
export const HEIGHT = 480;
const MARGIN = { top: 40, right: 24, bottom: 52, left: 68 };

export const PALETTE = [
  "#c0392b",
  "#2980b9",
  "#27ae60",
  "#8e44ad",
  "#d68910",
  "#16a085",
  "#7f8c8d",
  "#2c3e50",
  "#e74c3c",
  "#3498db",
];

export interface Scale {
  domain: [number, number];
  range: [number, number];
  apply(value: number): number;
}

function fmt(x: number): string {
  return Number(x.toFixed(6)).toString();
}

export function linearScale(domain: [number, number], range: [number, number]): Scale {
  const [d0, d1] = domain;
  const [r0, r1] = range;
  const span = d1 - d0 || 1;
  return {
    domain,
    range,
    apply: (value: number) => r0 + ((value - d0) / span) * (r1 - r0),
  };
}

export function niceTicks(lo: number, hi: number, count = 6): number[] {
  const span = hi - lo || 1;
  const rawStep = span / Math.max(count - 1, 1);
  const power = Math.pow(10, Math.floor(Math.log10(rawStep)));
  const candidates = [1, 2, 2.5, 5, 10].map((m) => m * power);
  const step = candidates.find((c) => c >= rawStep) ?? candidates[candidates.length - 1];
  const start = Math.ceil(lo / step) * step;
  const ticks: number[] = [];
  for (let v = start; v <= hi + step * 1e-9; v += step) {
    ticks.push(Number(v.toPrecision(12)));
  }
  return ticks;
}

export function dataExtent(series: number[][]): [number, number] {
  let lo = Infinity;
  let hi = -Infinity;
  for (const values of series) {
    for (const v of values) {
      if (v < lo) lo = v;
      if (v > hi) hi = v;
    }
  }
  if (!Number.isFinite(lo)) {
    lo = 0;
    hi = 1;
  }
  if (lo === hi) {
    hi = lo + 1;
  }
  return [lo, hi];
}

export class Chart {
  private parts: string[] = [];
  readonly x: Scale;
  readonly y: Scale;

  constructor(
    xDomain: [number, number],
    yDomain: [number, number],
    private title: string,
    xLabel: string,
    yLabel: string,
  ) {
    this.x = linearScale(xDomain, [MARGIN.left, WIDTH - MARGIN.right]);
    this.y = linearScale(yDomain, [HEIGHT - MARGIN.bottom, MARGIN.top]);
    this.axes(xLabel, yLabel);
  }

  private axes(xLabel: string, yLabel: string): void {
    const [x0, x1] = this.x.range;
    const [y0, y1] = this.y.range;
    this.parts.push(
      `<rect x="${x0}" y="${y1}" width="${x1 - x0}" height="${y0 - y1}" fill="none" stroke="#444" stroke-width="1"/>`,
    );
    for (const t of niceTicks(this.x.domain[0], this.x.domain[1])) {
      const px = this.x.apply(t);
      this.parts.push(
        `<line x1="${fmt(px)}" y1="${y0}" x2="${fmt(px)}" y2="${y0 + 5}" stroke="#444"/>`,
        `<text x="${fmt(px)}" y="${y0 + 20}" font-size="12" text-anchor="middle">${t}</text>`,
      );
    }
    for (const t of niceTicks(this.y.domain[0], this.y.domain[1])) {
      const py = this.y.apply(t);
      this.parts.push(
        `<line x1="${x0 - 5}" y1="${fmt(py)}" x2="${x0}" y2="${fmt(py)}" stroke="#444"/>`,
        `<text x="${x0 - 9}" y="${fmt(py + 4)}" font-size="12" text-anchor="end">${t}</text>`,
      );
    }
    this.parts.push(
      `<text x="${(x0 + x1) / 2}" y="${HEIGHT - 12}" font-size="13" text-anchor="middle">${escapeXml(xLabel)}</text>`,
      `<text x="18" y="${(y0 + y1) / 2}" font-size="13" text-anchor="middle" transform="rotate(-90 18 ${(y0 + y1) / 2})">${escapeXml(yLabel)}</text>`,
      `<text x="${(x0 + x1) / 2}" y="24" font-size="15" text-anchor="middle" font-weight="bold">${escapeXml(this.title)}</text>`,
    );
  }

  line(xs: number[], ys: number[], color: string, width = 1.6): void {
    const points = xs
      .map((x, i) => `${fmt(this.x.apply(x))},${fmt(this.y.apply(ys[i]))}`)
      .join(" ");
    this.parts.push(
      `<polyline points="${points}" fill="none" stroke="${color}" stroke-width="${width}"/>`,
    );
  }

  band(xs: number[], lower: number[], upper: number[], color: string): void {
    const up = xs.map((x, i) => `${fmt(this.x.apply(x))},${fmt(this.y.apply(upper[i]))}`);
    const down = xs
      .map((x, i) => `${fmt(this.x.apply(x))},${fmt(this.y.apply(lower[i]))}`)
      .reverse();
    this.parts.push(
      `<polygon points="${[...up, ...down].join(" ")}" fill="${color}" fill-opacity="0.35" stroke="none"/>`,
    );
  }

  bar(x: number, barWidth: number, value: number, color: string): void {
    const px = this.x.apply(x);
    const py = this.y.apply(value);
    const base = this.y.apply(Math.max(this.y.domain[0], 0));
    this.parts.push(
      `<rect x="${fmt(px - barWidth / 2)}" y="${fmt(Math.min(py, base))}" width="${fmt(barWidth)}" height="${fmt(Math.abs(base - py))}" fill="${color}"/>`,
    );
  }

  errorBar(x: number, value: number, halfSpan: number, color: string): void {
    const px = this.x.apply(x);
    const lo = this.y.apply(value - halfSpan);
    const hi = this.y.apply(value + halfSpan);
    this.parts.push(
      `<line x1="${fmt(px)}" y1="${fmt(lo)}" x2="${fmt(px)}" y2="${fmt(hi)}" stroke="${color}" stroke-width="1.2"/>`,
      `<line x1="${fmt(px - 4)}" y1="${fmt(lo)}" x2="${fmt(px + 4)}" y2="${fmt(lo)}" stroke="${color}" stroke-width="1.2"/>`,
      `<line x1="${fmt(px - 4)}" y1="${fmt(hi)}" x2="${fmt(px + 4)}" y2="${fmt(hi)}" stroke="${color}" stroke-width="1.2"/>`,
    );
  }

  legend(entries: Array<{ label: string; color: string }>): void {
    const x0 = WIDTH - MARGIN.right - 190;
    let y = MARGIN.top + 10;
    for (const { label, color } of entries) {
      this.parts.push(
        `<line x1="${x0}" y1="${y - 4}" x2="${x0 + 24}" y2="${y - 4}" stroke="${color}" stroke-width="3"/>`,
        `<text x="${x0 + 30}" y="${y}" font-size="12">${escapeXml(label)}</text>`,
      );
      y += 18;
    }
  }

  render(): string {
    return [
      `<svg xmlns="http://www.w3.org/2000/svg" width="${WIDTH}" height="${HEIGHT}" viewBox="0 0 ${WIDTH} ${HEIGHT}" font-family="sans-serif">`,
      `<rect width="${WIDTH}" height="${HEIGHT}" fill="white"/>`,
      ...this.parts,
      "</svg>",
      "",
    ].join("\n");
  }
}

export function escapeXml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}
