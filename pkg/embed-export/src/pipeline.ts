import { readFileSync } from "node:fs";
import { writeDenseMatrix, writeWordOccurrences, type DocumentOccurrences } from "./formats.js";
import { loadModel, type EmbeddingModel } from "./model.js";
import { pieces, tokenize } from "./tokenize.js";

export class CorpusError extends Error {
  constructor(message: string, readonly line: number) {
    super(message);
    this.name = "CorpusError";
  }
}

export interface EmbeddingJob {
  corpus: string;
  model: string;
  docOut: string;
  wordOut: string;
  batchSize: number;
  maxSeqLen: number;
}

export interface CorpusDocument {
  id: string;
  title: string;
  body: string;
}

export interface JobResult {
  documents: number;
  records: number;
  dim: number;
  emptyDocuments: string[];
  unknownWords: number;
}

/**
 * Read a JSONL corpus: one object per line with string fields id,
 * title, and body. Other fields (labels, sources, splits) are ignored;
 * this tool never reads them. Ids must be unique and tab-free since
 * they frame the output rows.
 */
export function loadCorpus(path: string): CorpusDocument[] {
  let text: string;
  try {
    text = readFileSync(path, "utf8");
  } catch (err) {
    throw new CorpusError(`cannot read corpus ${path}: ${(err as Error).message}`, 0);
  }
  const documents: CorpusDocument[] = [];
  const seen = new Set<string>();
  const lines = text.split("\n");
  for (let i = 0; i < lines.length; i++) {
    const line = lines[i].trim();
    if (line === "") continue;
    let record: unknown;
    try {
      record = JSON.parse(line);
    } catch (err) {
      throw new CorpusError(`${path}: line ${i + 1}: ${(err as Error).message}`, i + 1);
    }
    if (typeof record !== "object" || record === null || Array.isArray(record)) {
      throw new CorpusError(`${path}: line ${i + 1}: expected a JSON object`, i + 1);
    }
    const obj = record as Record<string, unknown>;
    for (const field of ["id", "title", "body"] as const) {
      if (typeof obj[field] !== "string") {
        throw new CorpusError(`${path}: line ${i + 1}: missing string field ${field}`, i + 1);
      }
    }
    const id = obj.id as string;
    if (id === "" || /[\t\n]/.test(id)) {
      throw new CorpusError(`${path}: line ${i + 1}: id must be non-empty and tab-free`, i + 1);
    }
    if (seen.has(id)) {
      throw new CorpusError(`${path}: line ${i + 1}: duplicate id ${id}`, i + 1);
    }
    seen.add(id);
    documents.push({ id, title: obj.title as string, body: obj.body as string });
  }
  return documents;
}

/**
 * Split a word sequence into chunks whose sub-word piece counts stay
 * within the model's max sequence length. Chunks do not overlap and
 * never split a word; a single word with more pieces than the budget
 * still gets its own chunk rather than being dropped.
 */
export function chunkWords(words: string[], maxSeqLen: number): string[][] {
  const chunks: string[][] = [];
  let current: string[] = [];
  let used = 0;
  for (const word of words) {
    const cost = pieces(word).length;
    if (current.length > 0 && used + cost > maxSeqLen) {
      chunks.push(current);
      current = [];
      used = 0;
    }
    current.push(word);
    used += cost;
  }
  if (current.length > 0) chunks.push(current);
  return chunks;
}

function meanRows(vectors: number[][], dim: number): number[] {
  const acc = new Array<number>(dim).fill(0);
  if (vectors.length === 0) return acc;
  for (const v of vectors) {
    for (let i = 0; i < dim; i++) acc[i] += v[i];
  }
  for (let i = 0; i < dim; i++) acc[i] /= vectors.length;
  return acc;
}

/**
 * Run one export job: write the document-embedding matrix (FSDM v1,
 * one row per document, unweighted mean of its word vectors) and the
 * word-occurrence stream (FSWO v1, one record per word in document and
 * position order). Documents with no word tokens get a zero row and no
 * occurrence records; callers should surface them as warnings.
 */
export function runJob(job: EmbeddingJob): JobResult {
  if (!Number.isInteger(job.batchSize) || job.batchSize < 1) {
    throw new Error(`batch size must be a positive integer, got ${job.batchSize}`);
  }
  if (!Number.isInteger(job.maxSeqLen) || job.maxSeqLen < 1) {
    throw new Error(`max sequence length must be a positive integer, got ${job.maxSeqLen}`);
  }
  const model: EmbeddingModel = loadModel(job.model);
  const documents = loadCorpus(job.corpus);

  const chunkRefs: { doc: number; words: string[] }[] = [];
  const docWords: string[][] = [];
  for (let d = 0; d < documents.length; d++) {
    const words = tokenize(documents[d].title + "\n" + documents[d].body);
    docWords.push(words);
    for (const chunk of chunkWords(words, job.maxSeqLen)) {
      chunkRefs.push({ doc: d, words: chunk });
    }
  }

  // Token vectors per document, concatenated across that document's
  // chunks in order; batching only groups model calls.
  const docVectors: number[][][] = documents.map(() => []);
  for (let start = 0; start < chunkRefs.length; start += job.batchSize) {
    const batch = chunkRefs.slice(start, start + job.batchSize);
    const embedded = model.embedChunks(batch.map((c) => c.words));
    for (let k = 0; k < batch.length; k++) {
      docVectors[batch[k].doc].push(...embedded[k]);
    }
  }

  const ids = documents.map((d) => d.id);
  const rows = docVectors.map((vectors) => meanRows(vectors, model.dim));
  writeDenseMatrix(job.docOut, ids, rows, model.dim);

  const occDocs: DocumentOccurrences[] = documents.map((doc, d) => ({
    id: doc.id,
    occurrences: docWords[d].map((word, k) => ({ word, vector: docVectors[d][k] })),
  }));
  writeWordOccurrences(job.wordOut, occDocs, model.dim);

  return {
    documents: documents.length,
    records: docWords.reduce((n, w) => n + w.length, 0),
    dim: model.dim,
    emptyDocuments: documents.filter((_, d) => docWords[d].length === 0).map((d) => d.id),
    unknownWords: model.unknownWords,
  };
}
