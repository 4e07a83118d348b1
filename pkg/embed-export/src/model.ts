import { readFileSync } from "node:fs";
import { pieces } from "./tokenize.js";

export class ModelLoadError extends Error {
  constructor(message: string) {
    super(message);
    this.name = "ModelLoadError";
  }
}

/**
 * A word-embedding backend. embedChunks receives chunks of whole words
 * (one document may span several chunks) and returns one vector per
 * word. Sub-word models pool their pieces into the word vector before
 * returning, so callers only ever see word-level vectors.
 */
export interface EmbeddingModel {
  readonly dim: number;
  /** Words looked up but absent from the model, counted for reporting. */
  readonly unknownWords: number;
  embedChunks(chunks: string[][]): number[][][];
}

function fnv1a(s: string): number {
  let h = 0x811c9dc5;
  for (const byte of Buffer.from(s, "utf8")) {
    h ^= byte;
    h = Math.imul(h, 0x01000193);
  }
  return h >>> 0;
}

function mulberry32(seed: number): () => number {
  let a = seed >>> 0;
  return () => {
    a = (a + 0x6d2b79f5) >>> 0;
    let t = a;
    t = Math.imul(t ^ (t >>> 15), t | 1);
    t ^= t + Math.imul(t ^ (t >>> 7), t | 61);
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  };
}

/**
 * Deterministic stand-in model: each sub-word piece gets a vector in
 * [-1, 1) seeded by a hash of its bytes, and a word is the mean of its
 * piece vectors. Same word, same vector, on any machine.
 */
export class HashModel implements EmbeddingModel {
  readonly unknownWords = 0;

  constructor(readonly dim: number) {}

  pieceVector(piece: string): number[] {
    const next = mulberry32(fnv1a(piece));
    const out = new Array<number>(this.dim);
    for (let i = 0; i < this.dim; i++) out[i] = 2 * next() - 1;
    return out;
  }

  wordVector(word: string): number[] {
    const parts = pieces(word);
    if (parts.length === 1) return this.pieceVector(parts[0]);
    const acc = new Array<number>(this.dim).fill(0);
    for (const p of parts) {
      const v = this.pieceVector(p);
      for (let i = 0; i < this.dim; i++) acc[i] += v[i];
    }
    for (let i = 0; i < this.dim; i++) acc[i] /= parts.length;
    return acc;
  }

  embedChunks(chunks: string[][]): number[][][] {
    return chunks.map((chunk) => chunk.map((w) => this.wordVector(w)));
  }
}

/**
 * Lookup model over a word2vec-style text file: a "<count> <dim>"
 * header line, then "<word> <v1> ... <vdim>" lines. Words missing from
 * the table embed as zero vectors and are counted in unknownWords.
 */
export class VecFileModel implements EmbeddingModel {
  readonly dim: number;
  unknownWords = 0;
  private readonly table: Map<string, number[]>;

  constructor(path: string) {
    let text: string;
    try {
      text = readFileSync(path, "utf8");
    } catch (err) {
      throw new ModelLoadError(`cannot read vector file ${path}: ${(err as Error).message}`);
    }
    const lines = text.split("\n");
    const header = (lines[0] ?? "").trim().split(/\s+/);
    const count = Number(header[0]);
    const dim = Number(header[1]);
    if (header.length !== 2 || !Number.isInteger(count) || !Number.isInteger(dim) || count < 0 || dim <= 0) {
      throw new ModelLoadError(`${path}: bad vector file header ${JSON.stringify(lines[0] ?? "")}`);
    }
    this.dim = dim;
    this.table = new Map();
    for (let k = 0; k < count; k++) {
      const line = lines[k + 1];
      if (line === undefined || line === "") {
        throw new ModelLoadError(`${path}: expected ${count} entries, got ${k}`);
      }
      const fields = line.split(/\s+/).filter((f) => f.length > 0);
      if (fields.length !== dim + 1) {
        throw new ModelLoadError(`${path}: line ${k + 2}: expected ${dim + 1} fields, got ${fields.length}`);
      }
      const vector = fields.slice(1).map((f) => {
        const v = Number(f);
        if (Number.isNaN(v) && f !== "NaN") {
          throw new ModelLoadError(`${path}: line ${k + 2}: bad float ${JSON.stringify(f)}`);
        }
        return v;
      });
      this.table.set(fields[0], vector);
    }
  }

  wordVector(word: string): number[] {
    const v = this.table.get(word);
    if (v === undefined) {
      this.unknownWords += 1;
      return new Array<number>(this.dim).fill(0);
    }
    return v;
  }

  embedChunks(chunks: string[][]): number[][][] {
    return chunks.map((chunk) => chunk.map((w) => this.wordVector(w)));
  }
}

const DEFAULT_HASH_DIM = 64;

/**
 * Resolve a model identifier to a backend:
 *   "hash"        deterministic hash model, default dimension
 *   "hash:<dim>"  deterministic hash model with the given dimension
 *   "vec:<path>"  word2vec-style text vector file
 * Anything else fails to load (exit code 4 at the command line).
 */
export function loadModel(identifier: string): EmbeddingModel {
  if (identifier === "hash") return new HashModel(DEFAULT_HASH_DIM);
  if (identifier.startsWith("hash:")) {
    const dim = Number(identifier.slice(5));
    if (!Number.isInteger(dim) || dim <= 0) {
      throw new ModelLoadError(`bad hash model dimension in ${JSON.stringify(identifier)}`);
    }
    return new HashModel(dim);
  }
  if (identifier.startsWith("vec:")) {
    return new VecFileModel(identifier.slice(4));
  }
  throw new ModelLoadError(`unknown model identifier ${JSON.stringify(identifier)}`);
}
