import { mkdtempSync, rmSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";

export function makeTmpDir(): { dir: string; cleanup: () => void } {
  const dir = mkdtempSync(join(tmpdir(), "embx-"));
  return { dir, cleanup: () => rmSync(dir, { recursive: true, force: true }) };
}

export function writeCorpus(
  path: string,
  docs: { id: string; title: string; body: string }[],
): void {
  writeFileSync(path, docs.map((d) => JSON.stringify(d)).join("\n") + "\n", "utf8");
}
