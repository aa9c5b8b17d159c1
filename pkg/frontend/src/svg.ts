/** Minimal deterministic SVG output: grouped bars with error whiskers and
 * banded line traces.  Numbers are serialized with a fixed precision so the
 * same inputs yield byte-identical files. */

const WIDTH = 720;
const HEIGHT = 420;
const MARGIN = { top: 42, right: 24, bottom: 64, left: 56 };

export const PALETTE = ["#4c72b0", "#dd8452", "#55a868", "#c44e52", "#8172b3", "#937860"];

export function fmt(x: number): string {
  if (!Number.isFinite(x)) return "0";
  const s = x.toFixed(3);
  return s === "-0.000" ? "0.000" : s;
}

function esc(text: string): string {
  return text.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

export interface BarGroup {
  label: string;
  bars: { label: string; value: number; err: number; color: string }[];
}

export interface TraceSeries {
  label: string;
  color: string;
  mean: number[];
  std: number[];
}

interface Scale {
  lo: number;
  hi: number;
  y(v: number): number;
}

function niceScale(lo: number, hi: number): Scale {
  if (lo > 0) lo = 0;
  if (hi < 0) hi = 0;
  if (hi === lo) hi = lo + 1;
  const pad = 0.06 * (hi - lo);
  lo -= pad;
  hi += pad;
  const plotH = HEIGHT - MARGIN.top - MARGIN.bottom;
  return {
    lo,
    hi,
    y: (v: number) => MARGIN.top + plotH * (1 - (v - lo) / (hi - lo)),
  };
}

function axes(scale: Scale, title: string): string {
  const plotW = WIDTH - MARGIN.left - MARGIN.right;
  const parts: string[] = [];
  parts.push(`<text x="${WIDTH / 2}" y="24" text-anchor="middle" font-size="15" font-weight="bold">${esc(title)}</text>`);
  const ticks = 5;
  for (let i = 0; i <= ticks; i++) {
    const v = scale.lo + ((scale.hi - scale.lo) * i) / ticks;
    const y = scale.y(v);
    parts.push(`<line x1="${MARGIN.left}" y1="${fmt(y)}" x2="${WIDTH - MARGIN.right}" y2="${fmt(y)}" stroke="#dddddd"/>`);
    parts.push(`<text x="${MARGIN.left - 6}" y="${fmt(y + 4)}" text-anchor="end" font-size="11">${fmt(v)}</text>`);
  }
  if (scale.lo < 0 && scale.hi > 0) {
    const y0 = scale.y(0);
    parts.push(`<line x1="${MARGIN.left}" y1="${fmt(y0)}" x2="${WIDTH - MARGIN.right}" y2="${fmt(y0)}" stroke="#888888"/>`);
  }
  parts.push(`<rect x="${MARGIN.left}" y="${MARGIN.top}" width="${plotW}" height="${HEIGHT - MARGIN.top - MARGIN.bottom}" fill="none" stroke="#444444"/>`);
  return parts.join("\n");
}

function document(body: string): string {
  return (
    `<svg xmlns="http://www.w3.org/2000/svg" width="${WIDTH}" height="${HEIGHT}" ` +
    `viewBox="0 0 ${WIDTH} ${HEIGHT}" font-family="sans-serif">\n` +
    `<rect width="${WIDTH}" height="${HEIGHT}" fill="white"/>\n${body}\n</svg>\n`
  );
}

/** Grouped bar chart with +/- error whiskers. */
export function barChart(title: string, groups: BarGroup[]): string {
  const values: number[] = [];
  for (const g of groups) {
    for (const b of g.bars) {
      values.push(b.value - b.err, b.value + b.err);
    }
  }
  const scale = niceScale(Math.min(...values), Math.max(...values));
  const plotW = WIDTH - MARGIN.left - MARGIN.right;
  const groupW = plotW / groups.length;
  const parts: string[] = [axes(scale, title)];
  const y0 = scale.y(Math.max(scale.lo, Math.min(scale.hi, 0)));
  groups.forEach((group, gi) => {
    const n = group.bars.length;
    const slot = groupW / (n + 1);
    group.bars.forEach((bar, bi) => {
      const x = MARGIN.left + gi * groupW + slot * (bi + 0.5);
      const w = slot * 0.9;
      const yv = scale.y(bar.value);
      const top = Math.min(yv, y0);
      const h = Math.abs(yv - y0);
      parts.push(
        `<rect x="${fmt(x)}" y="${fmt(top)}" width="${fmt(w)}" height="${fmt(h)}" fill="${bar.color}">` +
          `<title>${esc(`${group.label} ${bar.label}: ${bar.value}`)}</title></rect>`,
      );
      if (bar.err > 0) {
        const cx = x + w / 2;
        const yLo = scale.y(bar.value - bar.err);
        const yHi = scale.y(bar.value + bar.err);
        parts.push(`<line x1="${fmt(cx)}" y1="${fmt(yLo)}" x2="${fmt(cx)}" y2="${fmt(yHi)}" stroke="#222222"/>`);
        parts.push(`<line x1="${fmt(cx - 4)}" y1="${fmt(yHi)}" x2="${fmt(cx + 4)}" y2="${fmt(yHi)}" stroke="#222222"/>`);
        parts.push(`<line x1="${fmt(cx - 4)}" y1="${fmt(yLo)}" x2="${fmt(cx + 4)}" y2="${fmt(yLo)}" stroke="#222222"/>`);
      }
    });
    const lx = MARGIN.left + gi * groupW + groupW / 2;
    parts.push(
      `<text x="${fmt(lx)}" y="${HEIGHT - MARGIN.bottom + 18}" text-anchor="middle" font-size="11">${esc(group.label)}</text>`,
    );
  });
  // Legend from the first group's bar labels.
  if (groups.length > 0) {
    groups[0].bars.forEach((bar, bi) => {
      const lx = MARGIN.left + 8 + bi * 120;
      const ly = HEIGHT - 18;
      parts.push(`<rect x="${lx}" y="${ly - 10}" width="12" height="12" fill="${bar.color}"/>`);
      parts.push(`<text x="${lx + 16}" y="${ly}" font-size="11">${esc(bar.label)}</text>`);
    });
  }
  return document(parts.join("\n"));
}

/** Line traces with mean +/- one std bands, indexed by episode. */
export function traceChart(title: string, xLabel: string, series: TraceSeries[]): string {
  const values: number[] = [];
  for (const s of series) {
    s.mean.forEach((m, i) => {
      values.push(m - s.std[i], m + s.std[i]);
    });
  }
  const scale = niceScale(Math.min(...values), Math.max(...values));
  const plotW = WIDTH - MARGIN.left - MARGIN.right;
  const parts: string[] = [axes(scale, title)];
  series.forEach((s) => {
    const n = s.mean.length;
    const x = (i: number) => MARGIN.left + (n === 1 ? plotW / 2 : (plotW * i) / (n - 1));
    const upper = s.mean.map((m, i) => `${fmt(x(i))},${fmt(scale.y(m + s.std[i]))}`);
    const lower = s.mean
      .map((m, i) => `${fmt(x(i))},${fmt(scale.y(m - s.std[i]))}`)
      .reverse();
    parts.push(
      `<polygon points="${upper.concat(lower).join(" ")}" fill="${s.color}" opacity="0.18"/>`,
    );
    const line = s.mean.map((m, i) => `${fmt(x(i))},${fmt(scale.y(m))}`).join(" ");
    parts.push(`<polyline points="${line}" fill="none" stroke="${s.color}" stroke-width="1.5"/>`);
  });
  series.forEach((s, si) => {
    const lx = MARGIN.left + 8 + si * 170;
    const ly = HEIGHT - 18;
    parts.push(`<rect x="${lx}" y="${ly - 10}" width="12" height="12" fill="${s.color}"/>`);
    parts.push(`<text x="${lx + 16}" y="${ly}" font-size="11">${esc(s.label)}</text>`);
  });
  parts.push(
    `<text x="${WIDTH / 2}" y="${HEIGHT - MARGIN.bottom + 34}" text-anchor="middle" font-size="12">${esc(xLabel)}</text>`,
  );
  return document(parts.join("\n"));
}
