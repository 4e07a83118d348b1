import { readFileSync, writeFileSync } from "node:fs";

export class FormatError extends Error {
  constructor(message: string, readonly line: number) {
    super(message);
    this.name = "FormatError";
  }
}

/**
 * Shortest round-trip decimal for a double. Number.prototype.toString
 * already guarantees that; the one case it loses is negative zero,
 * which stringifies as "0", so that sign bit is restored by hand.
 */
export function formatFloat(v: number): string {
  if (Object.is(v, -0)) return "-0";
  return String(v);
}

export interface DenseMatrix {
  ids: string[];
  values: number[][];
}

export interface WordOccurrence {
  word: string;
  vector: number[];
}

export interface DocumentOccurrences {
  id: string;
  occurrences: WordOccurrence[];
}

/** Write the FSDM v1 dense matrix format: header line, then one
 * tab-separated row per document id. */
export function writeDenseMatrix(
  path: string,
  ids: string[],
  values: number[][],
  dim: number,
): void {
  const lines = [`FSDM v1 ${ids.length} ${dim}`];
  for (let i = 0; i < ids.length; i++) {
    const row = values[i];
    if (row.length !== dim) {
      throw new Error(`row ${i} has ${row.length} values, expected ${dim}`);
    }
    lines.push(ids[i] + "\t" + row.map(formatFloat).join(" "));
  }
  writeFileSync(path, lines.join("\n") + "\n", "utf8");
}

/** Write the FSWO v1 word-occurrence stream: FSDM framing with two
 * extra leading columns (document id, 0-based position). Documents
 * with no occurrences contribute no records. */
export function writeWordOccurrences(
  path: string,
  documents: DocumentOccurrences[],
  dim: number,
): void {
  const records: string[] = [];
  for (const doc of documents) {
    for (let pos = 0; pos < doc.occurrences.length; pos++) {
      const occ = doc.occurrences[pos];
      if (occ.vector.length !== dim) {
        throw new Error(
          `occurrence ${pos} of ${doc.id} has ${occ.vector.length} values, expected ${dim}`,
        );
      }
      records.push(
        `${doc.id}\t${pos}\t${occ.word}\t` + occ.vector.map(formatFloat).join(" "),
      );
    }
  }
  const lines = [`FSWO v1 ${records.length} ${dim}`, ...records];
  writeFileSync(path, lines.join("\n") + "\n", "utf8");
}

function parseHeader(header: string | undefined, magic: string, path: string): [number, number] {
  const match = (header ?? "").match(new RegExp(`^${magic} (\\d+) (\\d+)$`));
  if (!match) {
    throw new FormatError(`${path}: bad ${magic.split(" ")[0]} header ${JSON.stringify(header ?? "")}`, 1);
  }
  return [Number(match[1]), Number(match[2])];
}

function parseVector(text: string, dim: number, path: string, line: number): number[] {
  const fields = text.split(/\s+/).filter((f) => f.length > 0);
  if (fields.length !== dim) {
    throw new FormatError(
      `${path}: line ${line}: expected ${dim} values, got ${fields.length}`,
      line,
    );
  }
  return fields.map((f) => {
    const v = Number(f);
    if (Number.isNaN(v) && f !== "NaN") {
      throw new FormatError(`${path}: line ${line}: bad float ${JSON.stringify(f)}`, line);
    }
    return v;
  });
}

/** Read an FSDM v1 file. */
export function readDenseMatrix(path: string): DenseMatrix & { dim: number } {
  const text = readFileSync(path, "utf8");
  const lines = text.split("\n");
  const [rows, dim] = parseHeader(lines[0], "FSDM v1", path);
  const ids: string[] = [];
  const values: number[][] = [];
  for (let i = 0; i < rows; i++) {
    const line = lines[i + 1];
    if (line === undefined || line === "") {
      throw new FormatError(`${path}: expected ${rows} rows, got ${i}`, i + 2);
    }
    const tab = line.indexOf("\t");
    if (tab < 0) {
      throw new FormatError(`${path}: line ${i + 2}: missing tab separator`, i + 2);
    }
    ids.push(line.slice(0, tab));
    values.push(parseVector(line.slice(tab + 1), dim, path, i + 2));
  }
  for (let i = rows + 1; i < lines.length; i++) {
    if (lines[i].trim() !== "") {
      throw new FormatError(`${path}: trailing content after ${rows} rows`, i + 1);
    }
  }
  return { ids, values, dim };
}

/** Read an FSWO v1 file. Consecutive records sharing a document id are
 * grouped into one document, preserving file order. */
export function readWordOccurrences(
  path: string,
): { documents: DocumentOccurrences[]; dim: number } {
  const text = readFileSync(path, "utf8");
  const lines = text.split("\n");
  const [records, dim] = parseHeader(lines[0], "FSWO v1", path);
  const documents: DocumentOccurrences[] = [];
  let currentId: string | null = null;
  for (let k = 0; k < records; k++) {
    const line = lines[k + 1];
    if (line === undefined || line === "") {
      throw new FormatError(`${path}: expected ${records} records, got ${k}`, k + 2);
    }
    const fields = line.split("\t");
    if (fields.length !== 4) {
      throw new FormatError(`${path}: line ${k + 2}: expected 4 columns`, k + 2);
    }
    const [docId, , word, rest] = fields;
    const vector = parseVector(rest, dim, path, k + 2);
    if (docId !== currentId) {
      documents.push({ id: docId, occurrences: [] });
      currentId = docId;
    }
    documents[documents.length - 1].occurrences.push({ word, vector });
  }
  for (let i = records + 1; i < lines.length; i++) {
    if (lines[i].trim() !== "") {
      throw new FormatError(`${path}: trailing content after ${records} records`, i + 1);
    }
  }
  return { documents, dim };
}
