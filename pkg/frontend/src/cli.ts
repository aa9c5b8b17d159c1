#!/usr/bin/env node
/** Figure-generation entry point.
 *
 * Usage: cptgames-report --manifest out/manifest.json --spec figures.json
 *
 * The spec file holds one figure spec or an array of them:
 *   {"kind": "policy-bars", "select": {"game": "PrisonersDilemma",
 *    "history": 0}, "out": "figures/pd_policy.svg"}
 *
 * This tool never runs simulations; it only reads files the simulation CLI
 * produced.
 */

import * as fs from "fs";
import { render } from "./figures";
import { FigureSpec } from "./types";

function parseArgs(argv: string[]): { manifest: string; spec: string } {
  let manifest = "";
  let spec = "";
  for (let i = 0; i < argv.length; i++) {
    if (argv[i] === "--manifest") manifest = argv[++i] ?? "";
    else if (argv[i] === "--spec") spec = argv[++i] ?? "";
    else throw new Error(`unknown argument ${argv[i]}`);
  }
  if (!manifest || !spec) {
    throw new Error("usage: cptgames-report --manifest <manifest.json> --spec <figures.json>");
  }
  return { manifest, spec };
}

export function loadSpecs(specPath: string): FigureSpec[] {
  let text: string;
  try {
    text = fs.readFileSync(specPath, "utf8");
  } catch (e) {
    throw new Error(`cannot read figure spec ${specPath}: ${(e as Error).message}`);
  }
  const parsed = JSON.parse(text) as FigureSpec | FigureSpec[];
  const specs = Array.isArray(parsed) ? parsed : [parsed];
  if (specs.length === 0) throw new Error(`figure spec ${specPath} is empty`);
  for (const s of specs) {
    if (!s.kind || !s.out) {
      throw new Error(`figure spec ${specPath} entries need "kind" and "out"`);
    }
  }
  return specs;
}

export function main(argv: string[]): number {
  let args;
  try {
    args = parseArgs(argv);
    for (const spec of loadSpecs(args.spec)) {
      const out = render(args.manifest, spec);
      console.log(`wrote ${spec.kind} -> ${out}`);
    }
    return 0;
  } catch (e) {
    console.error(`error: ${(e as Error).message}`);
    return 1;
  }
}

if (require.main === module) {
  process.exit(main(process.argv.slice(2)));
}
