/**
 * Deterministic reference model backends.
 *
 * Real checkpoints are configuration: anything exposing these three
 * interfaces can be registered under a model id and served unchanged. The
 * reference backends are pure functions of their inputs, so identical
 * requests always produce identical responses (the protocol's determinism
 * contract), and the server runs with no model downloads at all.
 */

export interface EmbedModel {
  id: string;
  dim: number;
  embed(texts: string[]): number[][];
}

export interface SimilarityModel {
  id: string;
  score(claim: string, sentences: string[]): number[];
}

export interface NliModel {
  id: string;
  predict(premise: string, hypothesis: string): [number, number, number];
}

const TOKEN_RE = /[\p{L}\p{N}]+/gu;

export function tokenize(text: string): string[] {
  return (text.toLowerCase().match(TOKEN_RE) ?? []) as string[];
}

/** FNV-1a over UTF-8 bytes, 64-bit via BigInt; stable across platforms. */
function fnv1a64(data: string, seed: bigint): bigint {
  const OFFSET = 0xcbf29ce484222325n ^ seed;
  const PRIME = 0x100000001b3n;
  const MASK = 0xffffffffffffffffn;
  let hash = OFFSET;
  for (const byte of Buffer.from(data, "utf-8")) {
    hash ^= BigInt(byte);
    hash = (hash * PRIME) & MASK;
  }
  return hash;
}

/**
 * Bag-of-tokens hashing embedder: each token lands in one of `dim` buckets
 * with a +/-1 sign from an independent hash; the sum is L2-normalized.
 * Token-less text maps to the all-zero vector.
 */
export class HashEmbedder implements EmbedModel {
  readonly id: string;
  readonly dim: number;

  constructor(dim = 256, id = `reference-hash-${dim}`) {
    if (dim <= 0) throw new Error("dim must be positive");
    this.dim = dim;
    this.id = id;
  }

  embed(texts: string[]): number[][] {
    return texts.map((text) => {
      const vector = new Array<number>(this.dim).fill(0);
      for (const token of tokenize(text)) {
        const bucket = Number(fnv1a64(token, 0n) % BigInt(this.dim));
        const sign = fnv1a64(token, 0x9e3779b97f4a7c15n) % 2n === 0n ? 1 : -1;
        vector[bucket] += sign;
      }
      const norm = Math.sqrt(vector.reduce((acc, x) => acc + x * x, 0));
      return norm > 0 ? vector.map((x) => x / norm) : vector;
    });
  }
}

function jaccard(a: Set<string>, b: Set<string>): number {
  if (a.size === 0 && b.size === 0) return 0;
  let intersection = 0;
  for (const token of a) if (b.has(token)) intersection += 1;
  return intersection / (a.size + b.size - intersection);
}

/** Jaccard similarity of token sets; bounded to [0, 1], order-invariant. */
export class LexicalSimilarity implements SimilarityModel {
  readonly id: string;

  constructor(id = "reference-jaccard-sim") {
    this.id = id;
  }

  score(claim: string, sentences: string[]): number[] {
    const claimTokens = new Set(tokenize(claim));
    return sentences.map((s) => jaccard(claimTokens, new Set(tokenize(s))));
  }
}

const NEGATION_WORDS = new Set(["no", "not", "never", "cannot", "fails", "lacks"]);
const NEGATION_PHRASES = ["no evidence"];

function hasNegation(text: string): boolean {
  const lowered = text.toLowerCase();
  if (NEGATION_PHRASES.some((p) => lowered.includes(p))) return true;
  return tokenize(lowered).some((t) => NEGATION_WORDS.has(t));
}

/**
 * Token-overlap NLI heuristic: entailment mass is the overlap unless the
 * negation polarity of the two texts disagrees, in which case it becomes
 * contradiction mass; the remainder is neutral. Always sums to 1.
 */
export class HeuristicNli implements NliModel {
  readonly id: string;

  constructor(id = "reference-heuristic-nli") {
    this.id = id;
  }

  predict(premise: string, hypothesis: string): [number, number, number] {
    const overlap = jaccard(new Set(tokenize(premise)), new Set(tokenize(hypothesis)));
    const flipped = hasNegation(premise) !== hasNegation(hypothesis);
    let entail = flipped ? 0 : overlap;
    let contradict = flipped ? overlap : 0;
    let neutral = 1 - overlap;
    const total = entail + neutral + contradict;
    if (total <= 0) return [1 / 3, 1 / 3, 1 / 3];
    entail /= total;
    neutral /= total;
    contradict /= total;
    return [entail, neutral, contradict];
  }
}

export interface ModelRegistry {
  embed: EmbedModel;
  similarity: SimilarityModel;
  nli: NliModel;
}

/** Resolve configured model ids to backends; unknown ids abort startup. */
export function loadModels(
  embedModelId: string,
  simModelId: string,
  nliModelId: string,
  dim: number,
): ModelRegistry {
  const embedders: Record<string, () => EmbedModel> = {
    "reference-hash": () => new HashEmbedder(dim, `reference-hash-${dim}`),
  };
  const sims: Record<string, () => SimilarityModel> = {
    "reference-jaccard-sim": () => new LexicalSimilarity(),
  };
  const nlis: Record<string, () => NliModel> = {
    "reference-heuristic-nli": () => new HeuristicNli(),
  };
  const makeEmbed = embedders[embedModelId];
  const makeSim = sims[simModelId];
  const makeNli = nlis[nliModelId];
  if (!makeEmbed) throw new Error(`unknown embed model: ${embedModelId}`);
  if (!makeSim) throw new Error(`unknown similarity model: ${simModelId}`);
  if (!makeNli) throw new Error(`unknown NLI model: ${nliModelId}`);
  return { embed: makeEmbed(), similarity: makeSim(), nli: makeNli() };
}
