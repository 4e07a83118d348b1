import { writeFileSync } from "node:fs";
import { join } from "node:path";
import { afterEach, beforeEach, describe, expect, it } from "vitest";
import { HashModel, ModelLoadError, VecFileModel, loadModel } from "../src/model.js";
import { makeTmpDir } from "./helpers.js";

let tmp: { dir: string; cleanup: () => void };
beforeEach(() => {
  tmp = makeTmpDir();
});
afterEach(() => {
  tmp.cleanup();
});

describe("HashModel", () => {
  it("is deterministic across instances", () => {
    const a = new HashModel(16).wordVector("ironique");
    const b = new HashModel(16).wordVector("ironique");
    expect(a).toEqual(b);
  });

  it("gives different words different vectors", () => {
    const m = new HashModel(16);
    expect(m.wordVector("chat")).not.toEqual(m.wordVector("chien"));
  });

  it("emits values in [-1, 1) at the requested dimension", () => {
    const v = new HashModel(32).wordVector("canapé");
    expect(v).toHaveLength(32);
    for (const x of v) {
      expect(x).toBeGreaterThanOrEqual(-1);
      expect(x).toBeLessThan(1);
    }
  });

  it("equals the single piece vector for short words", () => {
    const m = new HashModel(8);
    expect(m.wordVector("chat")).toEqual(m.pieceVector("chat"));
  });

  it("averages piece vectors for longer words", () => {
    const m = new HashModel(8);
    const got = m.wordVector("parisien");
    const p1 = m.pieceVector("pari");
    const p2 = m.pieceVector("sien");
    for (let i = 0; i < 8; i++) {
      expect(got[i]).toBeCloseTo((p1[i] + p2[i]) / 2, 15);
    }
  });

  it("batches without changing per-word vectors", () => {
    const m = new HashModel(8);
    const [chunk] = m.embedChunks([["un", "deux"]]);
    expect(chunk[0]).toEqual(m.wordVector("un"));
    expect(chunk[1]).toEqual(m.wordVector("deux"));
  });
});

describe("VecFileModel", () => {
  function writeVecFile(name: string, content: string): string {
    const path = join(tmp.dir, name);
    writeFileSync(path, content, "utf8");
    return path;
  }

  it("looks up vectors exactly as stored", () => {
    const path = writeVecFile("small.vec", "2 3\nchat 0.5 -1.25 3\ndort 1 2 -0\n");
    const m = new VecFileModel(path);
    expect(m.dim).toBe(3);
    expect(m.wordVector("chat")).toEqual([0.5, -1.25, 3]);
    expect(Object.is(m.wordVector("dort")[2], -0)).toBe(true);
  });

  it("embeds unknown words as zero vectors and counts them", () => {
    const path = writeVecFile("small.vec", "1 2\nconnu 1 2\n");
    const m = new VecFileModel(path);
    expect(m.wordVector("inconnu")).toEqual([0, 0]);
    expect(m.wordVector("connu")).toEqual([1, 2]);
    expect(m.unknownWords).toBe(1);
  });

  it("rejects a missing file", () => {
    expect(() => new VecFileModel(join(tmp.dir, "absent.vec"))).toThrow(ModelLoadError);
  });

  it("rejects malformed content", () => {
    const bad = [
      "not a header\nchat 1 2\n",
      "2 3\nchat 0.5 -1.25 3\n",
      "1 3\nchat 0.5 -1.25\n",
      "1 2\nchat 0.5 huh\n",
      "1 0\n",
    ];
    for (const content of bad) {
      const path = writeVecFile("bad.vec", content);
      expect(() => new VecFileModel(path)).toThrow(ModelLoadError);
    }
  });
});

describe("loadModel", () => {
  it("resolves hash identifiers", () => {
    expect(loadModel("hash").dim).toBe(64);
    expect(loadModel("hash:8").dim).toBe(8);
  });

  it("resolves vec identifiers", () => {
    const path = join(tmp.dir, "m.vec");
    writeFileSync(path, "1 2\nmot 1 2\n", "utf8");
    expect(loadModel(`vec:${path}`).dim).toBe(2);
  });

  it("rejects bad identifiers", () => {
    expect(() => loadModel("hash:0")).toThrow(ModelLoadError);
    expect(() => loadModel("hash:x")).toThrow(ModelLoadError);
    expect(() => loadModel("some-transformer")).toThrow(ModelLoadError);
  });
});
