/** Wire formats produced by the simulation CLI (manifest, summaries, step
 * logs) and the figure-spec schema this tool consumes. */

export interface CellConfig {
  game: string;
  matchup: [string, string];
  ref_model: { kind: string; eta_ref: number; fixed_value: number };
  history: number;
  episodes: number;
  steps_per_episode: number;
  runs: number;
  base_seed: number;
  window: number;
  [key: string]: unknown;
}

export interface ManifestCell {
  fingerprint: string;
  config: CellConfig;
  files: { steps: string; summary: string };
  status: string;
  error?: string;
}

export interface Manifest {
  schema_version: number;
  out_dir: string;
  cells: ManifestCell[];
  failed: number;
}

export interface RunSummary {
  run_index: number;
  seed: number;
  window: number;
  policy: [number, number];
  mean_rewards: [number, number];
  change_rate: [number | null, number | null];
  mean_l2: [number | null, number | null];
  max_l2: [number | null, number | null];
  ref_trace: { mean: number | null; min: number | null; max: number | null; final: number | null }[];
  classification: { policy: number[]; anomalous: boolean; point: number[] | null };
}

export interface SummaryFile {
  schema_version: number;
  fingerprint: string;
  config: CellConfig;
  runs: RunSummary[];
}

/** One parsed step-log row; field names follow the CSV header. */
export interface StepRow {
  run: number;
  step: number;
  action_r: number;
  action_c: number;
  reward_r: number;
  reward_c: number;
  ref_r: number;
  ref_c: number;
  explored_r: number;
  explored_c: number;
  eu_r0: number;
  eu_r1: number;
  eu_c0: number;
  eu_c1: number;
  cpt_r0: number;
  cpt_r1: number;
  cpt_c0: number;
  cpt_c1: number;
  l2_r: number;
  l2_c: number;
}

export type FigureKind =
  | "policy-bars"
  | "joint-actions"
  | "ref-trace"
  | "l2-trace"
  | "change-bars";

export interface FigureSelect {
  game?: string;
  matchup?: string; // "AH-LH"
  ref_model?: string;
  history?: number;
}

export interface FigureSpec {
  kind: FigureKind;
  select: FigureSelect;
  out: string;
}
