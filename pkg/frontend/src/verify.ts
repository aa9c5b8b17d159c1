/** Cross-checks between metrics recomputed from raw step logs and the
 * engine's summary files.  Every figure runs the checks relevant to its
 * inputs before rendering; a mismatch aborts with the offending file and
 * field. */

import { changeRate, convergedPolicy, meanL2, meanRef, meanRewards } from "./stats";
import { StepRow, SummaryFile } from "./types";

export const TOLERANCE = 1e-9;

function ensureClose(actual: number, expected: number, what: string, file: string): void {
  if (!(Math.abs(actual - expected) <= TOLERANCE)) {
    throw new Error(
      `summary cross-check failed for ${what} in ${file}: ` +
        `recomputed ${actual}, summary says ${expected}`,
    );
  }
}

/** Verify recomputed window metrics against the summary for every run. */
export function verifyAgainstSummary(
  runs: StepRow[][],
  summary: SummaryFile,
  summaryPath: string,
): void {
  if (runs.length !== summary.runs.length) {
    throw new Error(
      `run count mismatch in ${summaryPath}: log has ${runs.length}, ` +
        `summary has ${summary.runs.length}`,
    );
  }
  summary.runs.forEach((run, i) => {
    const rows = runs[i];
    const window = run.window;
    const policy = convergedPolicy(rows, window);
    ensureClose(policy[0], run.policy[0], `run ${i} policy p`, summaryPath);
    ensureClose(policy[1], run.policy[1], `run ${i} policy q`, summaryPath);
    const rewards = meanRewards(rows, window);
    ensureClose(rewards[0], run.mean_rewards[0], `run ${i} mean reward r`, summaryPath);
    ensureClose(rewards[1], run.mean_rewards[1], `run ${i} mean reward c`, summaryPath);
    ([0, 1] as const).forEach((agent) => {
      const expectedRate = run.change_rate[agent];
      if (expectedRate !== null) {
        ensureClose(
          changeRate(rows, agent, window),
          expectedRate,
          `run ${i} agent ${agent} change rate`,
          summaryPath,
        );
      }
      const expectedL2 = run.mean_l2[agent];
      if (expectedL2 !== null) {
        ensureClose(
          meanL2(rows, agent, window),
          expectedL2,
          `run ${i} agent ${agent} mean L2`,
          summaryPath,
        );
      }
      const expectedRef = run.ref_trace[agent].mean;
      if (expectedRef !== null) {
        ensureClose(
          meanRef(rows, agent, window),
          expectedRef,
          `run ${i} agent ${agent} mean reference`,
          summaryPath,
        );
      }
    });
  });
}
