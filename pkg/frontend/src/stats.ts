/** Windowed metrics recomputed from raw step rows.  These mirror the
 * producer's definitions operation for operation (same iteration order, same
 * exclusions) so cross-checks against the summary files hold to 1e-9. */

import { StepRow } from "./types";

export const EU_TIE_EXCLUSION = 1e-8;

export function mean(values: number[]): number {
  let acc = 0;
  for (const v of values) acc += v;
  return acc / values.length;
}

/** Population standard deviation (matches the producer's run bands). */
export function std(values: number[]): number {
  const mu = mean(values);
  let acc = 0;
  for (const v of values) acc += (v - mu) * (v - mu);
  return Math.sqrt(acc / values.length);
}

export function windowRows(rows: StepRow[], window: number): StepRow[] {
  if (window > rows.length) {
    throw new Error(`window ${window} exceeds log length ${rows.length}`);
  }
  return rows.slice(rows.length - window);
}

/** Frequency of first-action play per player over the final window. */
export function convergedPolicy(rows: StepRow[], window: number): [number, number] {
  const tail = windowRows(rows, window);
  let countR = 0;
  let countC = 0;
  for (const t of tail) {
    if (t.action_r === 0) countR += 1;
    if (t.action_c === 0) countC += 1;
  }
  return [countR / tail.length, countC / tail.length];
}

export function meanRewards(rows: StepRow[], window: number): [number, number] {
  const tail = windowRows(rows, window);
  let r = 0;
  let c = 0;
  for (const t of tail) {
    r += t.reward_r;
    c += t.reward_c;
  }
  return [r / tail.length, c / tail.length];
}

/** Distribution over the four joint actions in the final window. */
export function jointActionFrequencies(rows: StepRow[], window: number): number[][] {
  const tail = windowRows(rows, window);
  const counts = [
    [0, 0],
    [0, 0],
  ];
  for (const t of tail) counts[t.action_r][t.action_c] += 1;
  return counts.map((row) => row.map((v) => v / tail.length));
}

/** CPT-vs-EU argmax deviation rate over exploit steps, near-EU-ties excluded. */
export function changeRate(rows: StepRow[], agent: 0 | 1, window: number): number {
  const tail = windowRows(rows, window);
  let eligible = 0;
  let changed = 0;
  for (const t of tail) {
    const explored = agent === 0 ? t.explored_r : t.explored_c;
    if (explored !== 0) continue; // exploration steps and value-free agents
    const eu0 = agent === 0 ? t.eu_r0 : t.eu_c0;
    const eu1 = agent === 0 ? t.eu_r1 : t.eu_c1;
    if (Math.abs(eu0 - eu1) < EU_TIE_EXCLUSION) continue;
    eligible += 1;
    const euArg = eu0 >= eu1 ? 0 : 1;
    const cpt0 = agent === 0 ? t.cpt_r0 : t.cpt_c0;
    const cpt1 = agent === 0 ? t.cpt_r1 : t.cpt_c1;
    const cptArg = cpt0 >= cpt1 ? 0 : 1;
    if (euArg !== cptArg) changed += 1;
  }
  return eligible > 0 ? changed / eligible : 0;
}

export function meanL2(rows: StepRow[], agent: 0 | 1, window: number): number {
  const tail = windowRows(rows, window);
  let acc = 0;
  for (const t of tail) acc += agent === 0 ? t.l2_r : t.l2_c;
  return acc / tail.length;
}

export function meanRef(rows: StepRow[], agent: 0 | 1, window: number): number {
  const tail = windowRows(rows, window);
  let acc = 0;
  for (const t of tail) acc += agent === 0 ? t.ref_r : t.ref_c;
  return acc / tail.length;
}

/** Per-episode means of an arbitrary row field for trace figures. */
export function episodeMeans(
  rows: StepRow[],
  stepsPerEpisode: number,
  pick: (t: StepRow) => number,
): number[] {
  const out: number[] = [];
  for (let start = 0; start < rows.length; start += stepsPerEpisode) {
    const end = Math.min(start + stepsPerEpisode, rows.length);
    let acc = 0;
    for (let i = start; i < end; i++) acc += pick(rows[i]);
    out.push(acc / (end - start));
  }
  return out;
}

/** Episode-indexed mean and std band across runs. */
export function crossRunBand(perRun: number[][]): { mean: number[]; std: number[] } {
  const episodes = perRun[0].length;
  for (const series of perRun) {
    if (series.length !== episodes) throw new Error("runs disagree on episode count");
  }
  const meanOut: number[] = [];
  const stdOut: number[] = [];
  for (let e = 0; e < episodes; e++) {
    const vals = perRun.map((series) => series[e]);
    meanOut.push(mean(vals));
    stdOut.push(std(vals));
  }
  return { mean: meanOut, std: stdOut };
}
