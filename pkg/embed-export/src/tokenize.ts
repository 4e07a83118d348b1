// Word tokens are maximal runs of Unicode letters and digits; internal
// apostrophes and hyphens are kept so elisions and compounds stay whole
// ("l'humour", "sous-marin"). Punctuation and whitespace are dropped.
const WORD_RE = /[\p{L}\p{N}]+(?:['’-][\p{L}\p{N}]+)*/gu;

/** Split text into word tokens in order; position is the array index. */
export function tokenize(text: string): string[] {
  return text.match(WORD_RE) ?? [];
}

/**
 * Split a word into sub-word pieces of up to `size` code points.
 * Models that embed pieces average them back into one word vector
 * before any document averaging.
 */
export function pieces(word: string, size = 4): string[] {
  const chars = Array.from(word);
  const out: string[] = [];
  for (let i = 0; i < chars.length; i += size) {
    out.push(chars.slice(i, i + size).join(""));
  }
  return out;
}
