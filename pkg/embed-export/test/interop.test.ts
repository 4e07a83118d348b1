import { execFileSync } from "node:child_process";
import { join } from "node:path";
import { afterEach, beforeEach, describe, expect, it } from "vitest";
import { readDenseMatrix, writeDenseMatrix } from "../src/formats.js";
import { runJob } from "../src/pipeline.js";
import { makeTmpDir, writeCorpus } from "./helpers.js";

// These tests hand files to the Python toolkit that consumes them and
// are skipped when it is not importable on this machine.
function satkitAvailable(): boolean {
  try {
    execFileSync("python3", ["-c", "import satkit"], { stdio: "ignore" });
    return true;
  } catch {
    return false;
  }
}

const runPython = (script: string, ...args: string[]): string =>
  execFileSync("python3", ["-c", script, ...args], { encoding: "utf8" });

const describeInterop = satkitAvailable() ? describe : describe.skip;

let tmp: { dir: string; cleanup: () => void };
beforeEach(() => {
  tmp = makeTmpDir();
});
afterEach(() => {
  tmp.cleanup();
});

const DUMP_AND_RESAVE = `
import json, sys
from satkit.learner import load_dense_matrix, save_dense_matrix
m = load_dense_matrix(sys.argv[1])
save_dense_matrix(m, sys.argv[2])
print(json.dumps({"ids": list(m.row_ids), "values": [[repr(float(v)) for v in row] for row in m.values]}))
`;

const MEANS_VS_ROWS = `
import sys
import numpy as np
from satkit.explain import load_word_occurrences
from satkit.learner import load_dense_matrix
m = load_dense_matrix(sys.argv[1])
docs = load_word_occurrences(sys.argv[2])
means = {d: np.mean(np.array([v for _, v in occ]), axis=0) for d, occ in docs}
worst = 0.0
for i, doc_id in enumerate(m.row_ids):
    row = m.values[i]
    if doc_id in means:
        worst = max(worst, float(np.max(np.abs(means[doc_id] - row))))
    else:
        worst = max(worst, float(np.max(np.abs(row))))
print(repr(worst))
`;

describeInterop("interop with the Python toolkit", () => {
  it("round-trips exported FSDM files through the Python loader losslessly", () => {
    const corpus = join(tmp.dir, "corpus.jsonl");
    writeCorpus(corpus, [
      { id: "s1", title: "Une satire fine", body: "le ministre a déclaré que tout allait bien" },
      { id: "s2", title: "Chronique", body: "l'humour reste la meilleure défense contre l'ennui" },
      { id: "s3", title: "Bref", body: "rien à signaler aujourd'hui" },
    ]);
    const docOut = join(tmp.dir, "docs.fsdm");
    const wordOut = join(tmp.dir, "words.fswo");
    runJob({ corpus, model: "hash:16", docOut, wordOut, batchSize: 2, maxSeqLen: 8 });

    const resaved = join(tmp.dir, "resaved.fsdm");
    const dumped = JSON.parse(runPython(DUMP_AND_RESAVE, docOut, resaved)) as {
      ids: string[];
      values: string[][];
    };
    const ours = readDenseMatrix(docOut);
    expect(dumped.ids).toEqual(ours.ids);
    for (let i = 0; i < ours.ids.length; i++) {
      for (let j = 0; j < ours.dim; j++) {
        expect(Object.is(Number(dumped.values[i][j]), ours.values[i][j])).toBe(true);
      }
    }

    const reread = readDenseMatrix(resaved);
    expect(reread.ids).toEqual(ours.ids);
    for (let i = 0; i < ours.ids.length; i++) {
      for (let j = 0; j < ours.dim; j++) {
        expect(Object.is(reread.values[i][j], ours.values[i][j])).toBe(true);
      }
    }
  });

  it("round-trips edge-case doubles losslessly", () => {
    const path = join(tmp.dir, "edge.fsdm");
    const values = [
      [-0, 5e-324, 1e300],
      [1 / 3, 0.1, -2.2250738585072014e-308],
      [9007199254740992, -1, 0.30000000000000004],
    ];
    writeDenseMatrix(path, ["e1", "e2", "e3"], values, 3);
    const resaved = join(tmp.dir, "edge_resaved.fsdm");
    runPython(DUMP_AND_RESAVE, path, resaved);
    const reread = readDenseMatrix(resaved);
    for (let i = 0; i < 3; i++) {
      for (let j = 0; j < 3; j++) {
        expect(Object.is(reread.values[i][j], values[i][j])).toBe(true);
      }
    }
  });

  it("lets the Python loaders reconstruct document rows from occurrences", () => {
    const corpus = join(tmp.dir, "corpus.jsonl");
    writeCorpus(corpus, [
      { id: "a", title: "Politique locale", body: "le conseil municipal vote le budget annuel" },
      { id: "b", title: "Satire", body: "une nouvelle taxe sur les nuages est annoncée" },
      { id: "c", title: "", body: "…" },
      { id: "d", title: "Suite", body: "les négociations continuent tard dans la nuit" },
    ]);
    const docOut = join(tmp.dir, "docs.fsdm");
    const wordOut = join(tmp.dir, "words.fswo");
    const result = runJob({ corpus, model: "hash:16", docOut, wordOut, batchSize: 3, maxSeqLen: 6 });
    expect(result.emptyDocuments).toEqual(["c"]);

    const worst = Number(runPython(MEANS_VS_ROWS, docOut, wordOut).trim());
    expect(worst).toBeLessThanOrEqual(1e-5);
  });
});
