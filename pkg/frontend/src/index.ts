export { readStepLog, STEP_HEADER } from "./csv";
export { readManifest, readSummary, selectCells, cellFile, cellLabel } from "./manifest";
export {
  changeRate,
  convergedPolicy,
  crossRunBand,
  episodeMeans,
  jointActionFrequencies,
  mean,
  meanL2,
  meanRef,
  meanRewards,
  std,
} from "./stats";
export { verifyAgainstSummary, TOLERANCE } from "./verify";
export { barChart, traceChart } from "./svg";
export { render } from "./figures";
export { loadSpecs, main } from "./cli";
export * from "./types";
