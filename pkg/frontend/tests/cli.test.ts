import * as fs from "fs";
import * as os from "os";
import * as path from "path";
import { describe, expect, it } from "vitest";
import { loadSpecs, main } from "../src/cli";
import { MANIFEST } from "./fixture";

function writeSpec(specs: unknown): string {
  const dir = fs.mkdtempSync(path.join(os.tmpdir(), "spec-"));
  const p = path.join(dir, "figures.json");
  fs.writeFileSync(p, JSON.stringify(specs));
  return p;
}

describe("cli", () => {
  it("renders every spec in a list and exits zero", () => {
    const dir = fs.mkdtempSync(path.join(os.tmpdir(), "out-"));
    const specPath = writeSpec([
      {
        kind: "policy-bars",
        select: { game: "PrisonersDilemma" },
        out: path.join(dir, "policy.svg"),
      },
      {
        kind: "joint-actions",
        select: { matchup: "AH-LH" },
        out: path.join(dir, "joint.svg"),
      },
    ]);
    const rc = main(["--manifest", MANIFEST, "--spec", specPath]);
    expect(rc).toBe(0);
    expect(fs.existsSync(path.join(dir, "policy.svg"))).toBe(true);
    expect(fs.existsSync(path.join(dir, "joint.svg"))).toBe(true);
  });

  it("accepts a single spec object", () => {
    const dir = fs.mkdtempSync(path.join(os.tmpdir(), "out-"));
    const specPath = writeSpec({
      kind: "policy-bars",
      select: {},
      out: path.join(dir, "all.svg"),
    });
    expect(main(["--manifest", MANIFEST, "--spec", specPath])).toBe(0);
  });

  it("exits nonzero on a bad selection", () => {
    const specPath = writeSpec({
      kind: "policy-bars",
      select: { game: "Nonexistent" },
      out: "/tmp/never.svg",
    });
    expect(main(["--manifest", MANIFEST, "--spec", specPath])).toBe(1);
  });

  it("exits nonzero on usage errors", () => {
    expect(main(["--manifest", MANIFEST])).toBe(1);
    expect(main(["--bogus"])).toBe(1);
  });

  it("validates spec entries", () => {
    const specPath = writeSpec([{ select: {} }]);
    expect(() => loadSpecs(specPath)).toThrow(/need "kind" and "out"/);
  });
});
