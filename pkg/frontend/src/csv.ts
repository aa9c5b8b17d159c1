/** Step-log CSV parsing.  The header is fixed by the producer; a mismatch
 * means the file is not a step log and is reported by name. */

import * as fs from "fs";
import { StepRow } from "./types";

export const STEP_HEADER =
  "run,step,state_r,state_c,action_r,action_c,reward_r,reward_c," +
  "ref_r,ref_c,eps_r,eps_c,explored_r,explored_c," +
  "eu_r0,eu_r1,eu_c0,eu_c1,cpt_r0,cpt_r1,cpt_c0,cpt_c1," +
  "change_r,change_c,l2_r,l2_c";

const COLUMNS = STEP_HEADER.split(",");
const IDX: Record<string, number> = {};
COLUMNS.forEach((name, i) => (IDX[name] = i));

/** Parse a step log into per-run row arrays, ordered by run index. */
export function readStepLog(path: string): StepRow[][] {
  let text: string;
  try {
    text = fs.readFileSync(path, "utf8");
  } catch (e) {
    throw new Error(`cannot read step log ${path}: ${(e as Error).message}`);
  }
  const lines = text.split("\n");
  if (lines[0] !== STEP_HEADER) {
    throw new Error(`unexpected step-log header in ${path}`);
  }
  const byRun = new Map<number, StepRow[]>();
  for (let i = 1; i < lines.length; i++) {
    const line = lines[i];
    if (line === "") continue;
    const parts = line.split(",");
    if (parts.length !== COLUMNS.length) {
      throw new Error(`malformed step-log line ${i + 1} in ${path}`);
    }
    const num = (name: string) => Number(parts[IDX[name]]);
    const row: StepRow = {
      run: num("run"),
      step: num("step"),
      action_r: num("action_r"),
      action_c: num("action_c"),
      reward_r: num("reward_r"),
      reward_c: num("reward_c"),
      ref_r: num("ref_r"),
      ref_c: num("ref_c"),
      explored_r: num("explored_r"),
      explored_c: num("explored_c"),
      eu_r0: num("eu_r0"),
      eu_r1: num("eu_r1"),
      eu_c0: num("eu_c0"),
      eu_c1: num("eu_c1"),
      cpt_r0: num("cpt_r0"),
      cpt_r1: num("cpt_r1"),
      cpt_c0: num("cpt_c0"),
      cpt_c1: num("cpt_c1"),
      l2_r: num("l2_r"),
      l2_c: num("l2_c"),
    };
    if (Number.isNaN(row.run) || Number.isNaN(row.step)) {
      throw new Error(`malformed step-log line ${i + 1} in ${path}`);
    }
    const bucket = byRun.get(row.run);
    if (bucket) bucket.push(row);
    else byRun.set(row.run, [row]);
  }
  return [...byRun.keys()].sort((a, b) => a - b).map((k) => byRun.get(k)!);
}
