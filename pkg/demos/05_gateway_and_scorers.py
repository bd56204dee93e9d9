"""
Model gateway: one protocol, interchangeable scorers
====================================================

The pipeline talks to its three neural components (embedder, sentence
similarity, NLI) through one interface. A remote server implementing the
HTTP+JSON protocol and the offline fallbacks are drop-in replacements for
each other; everything below runs with no server at all.
"""

import os

from claimlens.gateway import (
    HashEmbedder,
    HeuristicNli,
    LexicalScorer,
    resolve_scorers,
    run_conformance,
)

# resolve_scorers("fallback") yields the pure offline bundle.
scorers = resolve_scorers("fallback")
print("embedder:", scorers.embedder.kind, f"dim={scorers.embedder.dim}")
print("sentence scorer:", scorers.sentence_scorer.kind)
print("nli:", scorers.nli.kind)

# The hash embedder is a deterministic bag-of-tokens stand-in: same text,
# same vector, on any machine.
a = HashEmbedder(dim=256).embed(["aspirin lowers fever"])
b = HashEmbedder(dim=256).embed(["aspirin lowers fever"])
print("\ndeterministic embeddings:", (a == b).all())

# The lexical scorer is Jaccard similarity of token sets.
scores = LexicalScorer().score_sentences(
    "ginkgo relieves tinnitus",
    ["ginkgo relieves tinnitus", "ginkgo biloba is a tree", "unrelated sentence"],
)
print("similarity scores:", [round(s, 3) for s in scores])

# The heuristic NLI combines token overlap with negation-cue polarity and
# always returns a probability triple summing to one.
nli = HeuristicNli()
print("restated claim:", nli.nli("the drug works well", "the drug works well"))
print("negated claim: ", nli.nli("no evidence that the drug works well",
                                 "the drug works well"))

# Point CLAIMLENS_GATEWAY at any server implementing the protocol (for
# instance the bundled model server) and the same code uses it remotely.
endpoint = os.environ.get("CLAIMLENS_GATEWAY")
if endpoint and endpoint != "fallback":
    print(f"\nchecking protocol conformance of {endpoint}")
    report = run_conformance(endpoint)
    print(report.format())
else:
    print("\nset CLAIMLENS_GATEWAY to a server URL to run the conformance suite")
