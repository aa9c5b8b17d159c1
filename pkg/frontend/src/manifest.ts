/** Manifest loading and cell selection. */

import * as fs from "fs";
import * as path from "path";
import { FigureSelect, Manifest, ManifestCell, SummaryFile } from "./types";

export function readManifest(manifestPath: string): Manifest {
  let text: string;
  try {
    text = fs.readFileSync(manifestPath, "utf8");
  } catch (e) {
    throw new Error(`cannot read manifest ${manifestPath}: ${(e as Error).message}`);
  }
  const manifest = JSON.parse(text) as Manifest;
  if (!Array.isArray(manifest.cells)) {
    throw new Error(`manifest ${manifestPath} has no cells array`);
  }
  return manifest;
}

/** Cells matching the selection; every selector is optional. */
export function selectCells(manifest: Manifest, select: FigureSelect): ManifestCell[] {
  return manifest.cells.filter((cell) => {
    if (cell.status !== "ok") return false;
    const cfg = cell.config;
    if (select.game !== undefined && cfg.game !== select.game) return false;
    if (select.matchup !== undefined && cfg.matchup.join("-") !== select.matchup) return false;
    if (select.ref_model !== undefined && cfg.ref_model.kind !== select.ref_model) return false;
    if (select.history !== undefined && cfg.history !== select.history) return false;
    return true;
  });
}

/** Resolve a manifest-relative file against the manifest's directory. */
export function cellFile(manifestPath: string, rel: string): string {
  return path.join(path.dirname(manifestPath), rel);
}

export function readSummary(summaryPath: string): SummaryFile {
  let text: string;
  try {
    text = fs.readFileSync(summaryPath, "utf8");
  } catch (e) {
    throw new Error(`cannot read summary ${summaryPath}: ${(e as Error).message}`);
  }
  return JSON.parse(text) as SummaryFile;
}

export function cellLabel(cell: ManifestCell): string {
  const cfg = cell.config;
  return `${cfg.game} ${cfg.matchup.join("-")} ${cfg.ref_model.kind} n=${cfg.history}`;
}
