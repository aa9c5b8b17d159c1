/** The five figure families, built strictly from files the simulation CLI
 * emitted: per-cell step logs selected through the manifest, cross-checked
 * against the cell summaries, then rendered to SVG. */

import * as fs from "fs";
import * as path from "path";
import { readStepLog } from "./csv";
import { cellFile, cellLabel, readManifest, readSummary, selectCells } from "./manifest";
import {
  changeRate,
  convergedPolicy,
  crossRunBand,
  episodeMeans,
  jointActionFrequencies,
  mean,
  std,
} from "./stats";
import { BarGroup, PALETTE, TraceSeries, barChart, traceChart } from "./svg";
import { FigureSpec, ManifestCell, StepRow } from "./types";
import { verifyAgainstSummary } from "./verify";

interface LoadedCell {
  cell: ManifestCell;
  runs: StepRow[][];
}

function loadCells(manifestPath: string, spec: FigureSpec): LoadedCell[] {
  const manifest = readManifest(manifestPath);
  const cells = selectCells(manifest, spec.select);
  if (cells.length === 0) {
    throw new Error(
      `figure selection matched no cells: ${JSON.stringify(spec.select)} in ${manifestPath}`,
    );
  }
  return cells.map((cell) => {
    const stepsPath = cellFile(manifestPath, cell.files.steps);
    const runs = readStepLog(stepsPath);
    const summaryPath = cellFile(manifestPath, cell.files.summary);
    verifyAgainstSummary(runs, readSummary(summaryPath), summaryPath);
    return { cell, runs };
  });
}

function policyBars(loaded: LoadedCell[]): string {
  const groups: BarGroup[] = loaded.map(({ cell, runs }) => {
    const window = cell.config.window;
    const ps = runs.map((rows) => convergedPolicy(rows, window)[0]);
    const qs = runs.map((rows) => convergedPolicy(rows, window)[1]);
    return {
      label: cellLabel(cell),
      bars: [
        { label: "p (row plays first action)", value: mean(ps), err: std(ps), color: PALETTE[0] },
        { label: "q (col plays first action)", value: mean(qs), err: std(qs), color: PALETTE[1] },
      ],
    };
  });
  return barChart("Converged policy (final window, mean ± std across runs)", groups);
}

function jointActionBars(loaded: LoadedCell[]): string {
  const labels = ["(0,0)", "(0,1)", "(1,0)", "(1,1)"];
  const groups: BarGroup[] = loaded.map(({ cell, runs }) => {
    const window = cell.config.window;
    const perRun = runs.map((rows) => jointActionFrequencies(rows, window).flat());
    return {
      label: cellLabel(cell),
      bars: labels.map((label, k) => {
        const vals = perRun.map((f) => f[k]);
        return { label, value: mean(vals), err: std(vals), color: PALETTE[k] };
      }),
    };
  });
  return barChart("Joint-action frequencies (final window, mean ± std across runs)", groups);
}

function agentSeries(
  loaded: LoadedCell[],
  pick: (t: StepRow, agent: 0 | 1) => number,
  skipAgent: (cell: ManifestCell, agent: 0 | 1) => boolean,
): TraceSeries[] {
  const series: TraceSeries[] = [];
  loaded.forEach(({ cell, runs }, ci) => {
    const spe = cell.config.steps_per_episode;
    ([0, 1] as const).forEach((agent) => {
      if (skipAgent(cell, agent)) return;
      const perRun = runs.map((rows) => episodeMeans(rows, spe, (t) => pick(t, agent)));
      const band = crossRunBand(perRun);
      series.push({
        label: `${cellLabel(cell)} ${cell.config.matchup[agent]}(${agent === 0 ? "row" : "col"})`,
        color: PALETTE[(2 * ci + agent) % PALETTE.length],
        mean: band.mean,
        std: band.std,
      });
    });
  });
  return series;
}

const isAi = (cell: ManifestCell, agent: 0 | 1) => cell.config.matchup[agent] === "AI";

function refTrace(loaded: LoadedCell[]): string {
  const series = agentSeries(loaded, (t, a) => (a === 0 ? t.ref_r : t.ref_c), isAi);
  if (series.length === 0) throw new Error("selection has no agents with reference points");
  return traceChart("Reference points (per-episode mean ± std across runs)", "episode", series);
}

function l2Trace(loaded: LoadedCell[]): string {
  const series = agentSeries(loaded, (t, a) => (a === 0 ? t.l2_r : t.l2_c), isAi);
  if (series.length === 0) throw new Error("selection has no agents with CPT diagnostics");
  return traceChart("CPT/EU L2 distance (per-episode mean ± std across runs)", "episode", series);
}

function changeBars(loaded: LoadedCell[]): string {
  const groups: BarGroup[] = [];
  loaded.forEach(({ cell, runs }) => {
    const window = cell.config.window;
    const bars = ([0, 1] as const)
      .filter((agent) => !isAi(cell, agent))
      .map((agent) => {
        const vals = runs.map((rows) => changeRate(rows, agent, window));
        return {
          label: `${cell.config.matchup[agent]} (${agent === 0 ? "row" : "col"})`,
          value: mean(vals),
          err: std(vals),
          color: PALETTE[agent],
        };
      });
    if (bars.length > 0) groups.push({ label: cellLabel(cell), bars });
  });
  if (groups.length === 0) throw new Error("selection has no agents with CPT diagnostics");
  return barChart("CPT action-change rate (final window, mean ± std across runs)", groups);
}

/** Render one figure spec; returns the output path. */
export function render(manifestPath: string, spec: FigureSpec): string {
  const loaded = loadCells(manifestPath, spec);
  let svg: string;
  switch (spec.kind) {
    case "policy-bars":
      svg = policyBars(loaded);
      break;
    case "joint-actions":
      svg = jointActionBars(loaded);
      break;
    case "ref-trace":
      svg = refTrace(loaded);
      break;
    case "l2-trace":
      svg = l2Trace(loaded);
      break;
    case "change-bars":
      svg = changeBars(loaded);
      break;
    default:
      throw new Error(`unknown figure kind ${(spec as FigureSpec).kind}`);
  }
  fs.mkdirSync(path.dirname(path.resolve(spec.out)), { recursive: true });
  fs.writeFileSync(spec.out, svg);
  return spec.out;
}
