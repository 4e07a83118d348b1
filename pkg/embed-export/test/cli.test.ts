import { existsSync, writeFileSync } from "node:fs";
import { join } from "node:path";
import { afterEach, beforeEach, describe, expect, it, vi } from "vitest";
import { main } from "../src/cli.js";
import { makeTmpDir, writeCorpus } from "./helpers.js";

let tmp: { dir: string; cleanup: () => void };
let logs: string[];
let errors: string[];

beforeEach(() => {
  tmp = makeTmpDir();
  logs = [];
  errors = [];
  vi.spyOn(console, "log").mockImplementation((msg: unknown) => {
    logs.push(String(msg));
  });
  vi.spyOn(console, "error").mockImplementation((msg: unknown) => {
    errors.push(String(msg));
  });
});
afterEach(() => {
  tmp.cleanup();
  vi.restoreAllMocks();
});

function paths() {
  return {
    corpus: join(tmp.dir, "corpus.jsonl"),
    docOut: join(tmp.dir, "docs.fsdm"),
    wordOut: join(tmp.dir, "words.fswo"),
  };
}

function baseArgs(p: ReturnType<typeof paths>, model = "hash:4"): string[] {
  return [
    "--corpus", p.corpus,
    "--model", model,
    "--doc-out", p.docOut,
    "--word-out", p.wordOut,
  ];
}

describe("main", () => {
  it("runs an export and reports counts", async () => {
    const p = paths();
    writeCorpus(p.corpus, [{ id: "d", title: "Un", body: "deux trois" }]);
    expect(await main(baseArgs(p))).toBe(0);
    expect(existsSync(p.docOut)).toBe(true);
    expect(existsSync(p.wordOut)).toBe(true);
    expect(logs).toContain("documents: 1");
    expect(logs).toContain("records: 3");
    expect(logs).toContain("dim: 4");
  });

  it("warns about empty documents on stderr", async () => {
    const p = paths();
    writeCorpus(p.corpus, [
      { id: "plein", title: "", body: "des mots" },
      { id: "vide", title: "", body: "..." },
    ]);
    expect(await main(baseArgs(p))).toBe(0);
    expect(errors.some((e) => e.includes("vide") && e.includes("zero row"))).toBe(true);
  });

  it("warns about words missing from a vector-file model", async () => {
    const p = paths();
    const vec = join(tmp.dir, "m.vec");
    writeFileSync(vec, "1 2\nconnu 1 2\n", "utf8");
    writeCorpus(p.corpus, [{ id: "d", title: "", body: "connu inconnu" }]);
    expect(await main(baseArgs(p, `vec:${vec}`))).toBe(0);
    expect(errors.some((e) => e.includes("1 word occurrences missing"))).toBe(true);
  });

  it("exits 2 on usage errors", async () => {
    const p = paths();
    writeCorpus(p.corpus, [{ id: "d", title: "", body: "x" }]);
    expect(await main(["--corpus", p.corpus])).toBe(2);
    expect(await main([...baseArgs(p), "--unknown-flag"])).toBe(2);
    expect(await main([...baseArgs(p), "--batch-size", "0"])).toBe(2);
    expect(await main([...baseArgs(p), "--max-seq-len", "nope"])).toBe(2);
    expect(errors.some((e) => e.startsWith("error:"))).toBe(true);
  });

  it("exits 3 on corpus errors", async () => {
    const p = paths();
    expect(await main(baseArgs(p))).toBe(3);
    writeFileSync(p.corpus, '{"id":"a","title":"T","body":"B"}\n{"id":"a","title":"U","body":"C"}\n');
    expect(await main(baseArgs(p))).toBe(3);
    expect(errors.some((e) => e.includes("duplicate id"))).toBe(true);
  });

  it("exits 4 on model load failure", async () => {
    const p = paths();
    writeCorpus(p.corpus, [{ id: "d", title: "", body: "x" }]);
    expect(await main(baseArgs(p, "no-such-model"))).toBe(4);
    expect(await main(baseArgs(p, `vec:${join(tmp.dir, "absent.vec")}`))).toBe(4);
    expect(errors.some((e) => e.includes("unknown model identifier"))).toBe(true);
  });
});
