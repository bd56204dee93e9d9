"""
BM25 retrieval over an inverted index
=====================================

Sparse retrieval ranks documents by exact term overlap, weighted by term
frequency, document length, and inverse document frequency. It is precise:
rare identifiers in a claim (gene symbols, drug names) dominate the score.
"""

from claimlens.core import Claim
from claimlens.corpus import Corpus, Document
from claimlens.sparse import (
    bm25_score,
    build_sparse_index,
    load_sparse_index,
    retrieve_sparse,
    save_sparse_index,
)

documents = [
    Document("pmid:1", "TMEM27 cleavage in beta cells",
             "The extracellular domain of TMEM27 is cleaved in human beta cells."),
    Document("pmid:2", "TMEM2 expression in endothelium",
             "TMEM2 is strongly expressed in endothelial cells of lymph nodes."),
    Document("pmid:3", "Capsaicin patches for neck pain",
             "A hydrogel patch containing capsaicin was compared with placebo for neck pain."),
    Document("pmid:4", "Capsaicin for postherpetic neuralgia",
             "The capsaicin 8% patch reduced pain scores in patients with PHN."),
    Document("pmid:5", "Aspirin and stroke",
             "Aspirin lowered the incidence of stroke in the treatment group."),
]
corpus = Corpus(documents=documents)
index = build_sparse_index(corpus)
print(f"indexed {index.n_docs} documents, {len(index.postings)} terms, avgdl={index.avgdl:.1f}")

# An exact-identifier claim: TMEM27 must not match TMEM2, and with no
# stemming in the tokenizer it does not.
claim = Claim("c1", "The extracellular domain of TMEM27 is cleaved in human beta cells")
for hit in retrieve_sparse(index, claim, k=3):
    print(f"  rank {hit.rank}: {hit.doc_id}  score={hit.score:.3f}")

# Individual document scores are available too (same formula, one doc).
print("score for the TMEM2 distractor:", f"{bm25_score(index, claim, 'pmid:2'):.3f}")

# Only documents sharing at least one claim term are candidates; a claim
# with foreign vocabulary retrieves nothing rather than noise.
print("foreign-vocabulary retrieval:", retrieve_sparse(index, Claim("c2", "quantum chromodynamics"), k=5))

# Indexes persist to a single self-describing JSON file and round-trip
# to identical query results.
save_sparse_index(index, "/tmp/demo-sparse-index.json")
reloaded = load_sparse_index("/tmp/demo-sparse-index.json")
assert retrieve_sparse(reloaded, claim, k=3) == retrieve_sparse(index, claim, k=3)
print("persisted and reloaded: identical rankings")
