import yargs from "yargs";
import { ModelLoadError } from "./model.js";
import { CorpusError, runJob } from "./pipeline.js";

/**
 * Command-line entry point. Exit codes: 0 success, 2 bad usage,
 * 3 corpus data errors, 4 model load failure.
 */
export async function main(argv: string[]): Promise<number> {
  let args;
  try {
    args = await yargs(argv)
      .usage("Export document embeddings and word occurrences from a corpus")
      .option("corpus", { type: "string", demandOption: true, describe: "JSONL corpus path" })
      .option("model", {
        type: "string",
        demandOption: true,
        describe: "model identifier: hash, hash:<dim>, or vec:<path>",
      })
      .option("doc-out", { type: "string", demandOption: true, describe: "FSDM v1 output path" })
      .option("word-out", { type: "string", demandOption: true, describe: "FSWO v1 output path" })
      .option("batch-size", { type: "number", default: 32, describe: "chunks per model call" })
      .option("max-seq-len", { type: "number", default: 512, describe: "sub-word pieces per chunk" })
      .strict()
      .fail((msg, err) => {
        throw err ?? new Error(msg);
      })
      .exitProcess(false)
      .parse();
  } catch (err) {
    console.error(`error: ${(err as Error).message}`);
    return 2;
  }
  if (!Number.isInteger(args.batchSize) || args.batchSize < 1) {
    console.error(`error: --batch-size must be a positive integer, got ${args.batchSize}`);
    return 2;
  }
  if (!Number.isInteger(args.maxSeqLen) || args.maxSeqLen < 1) {
    console.error(`error: --max-seq-len must be a positive integer, got ${args.maxSeqLen}`);
    return 2;
  }

  try {
    const result = runJob({
      corpus: args.corpus,
      model: args.model,
      docOut: args.docOut,
      wordOut: args.wordOut,
      batchSize: args.batchSize,
      maxSeqLen: args.maxSeqLen,
    });
    for (const id of result.emptyDocuments) {
      console.error(`warning: document ${id} has no word tokens, writing a zero row`);
    }
    if (result.unknownWords > 0) {
      console.error(`warning: ${result.unknownWords} word occurrences missing from the model, embedded as zero vectors`);
    }
    console.log(`documents: ${result.documents}`);
    console.log(`records: ${result.records}`);
    console.log(`dim: ${result.dim}`);
    console.log(`document matrix: ${args.docOut}`);
    console.log(`word occurrences: ${args.wordOut}`);
    return 0;
  } catch (err) {
    console.error(`error: ${(err as Error).message}`);
    if (err instanceof ModelLoadError) return 4;
    if (err instanceof CorpusError) return 3;
    throw err;
  }
}
