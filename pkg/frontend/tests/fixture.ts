import * as path from "path";

export const FIXTURE_DIR = path.join(__dirname, ".fixtures", "out");
export const MANIFEST = path.join(FIXTURE_DIR, "manifest.json");
