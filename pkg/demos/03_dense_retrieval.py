"""
Dense retrieval with cosine similarity
======================================

Dense retrieval embeds claim and documents into one vector space and ranks
by cosine similarity. With a real embedding model it catches paraphrases
that BM25 misses; here the deterministic offline embedder stands in, which
keeps everything reproducible without a model server.
"""

import numpy as np

from claimlens.core import Claim
from claimlens.corpus import Corpus, Document
from claimlens.dense import (
    build_dense_index,
    cosine_similarity,
    load_dense_index,
    retrieve_dense_text,
    save_dense_index,
)
from claimlens.gateway import HashEmbedder

documents = [
    Document("d1", "Ginkgo for tinnitus",
             "Systematic reviews found ginkgo extract ineffective against tinnitus."),
    Document("d2", "Vitamin C and colds",
             "One gram per day of vitamin c does not prevent colds in the community."),
    Document("d3", "Semaglutide side effects",
             "Gastrointestinal adverse events were the most common with semaglutide."),
]
embedder = HashEmbedder(dim=256)
index = build_dense_index(Corpus(documents=documents), embedder)
print(f"dense index: {len(index)} rows, dim {index.dim}, embedder {index.embedder_id}")
print("row norms:", np.linalg.norm(index.matrix, axis=1))

claim = Claim("c1", "ginkgo extract relieves tinnitus symptoms")
for hit in retrieve_dense_text(index, embedder, claim, k=3):
    print(f"  rank {hit.rank}: {hit.doc_id}  cosine={hit.score:.3f}")

# cosine_similarity is the primitive underneath: 1 for identical directions,
# 0 for orthogonal, -1 for opposite.
u = embedder.embed(["aspirin reduces fever"])[0]
v = embedder.embed(["reduces aspirin fever"])[0]  # bag-of-tokens: same vector
print("cosine of token permutations:", cosine_similarity(u, v))

# The index records which embedder produced it and refuses queries from a
# different one: mixing embedding spaces corrupts rankings silently.
other = HashEmbedder(dim=256)
other.id = "some-other-model"
try:
    retrieve_dense_text(index, other, claim, k=1)
except Exception as exc:
    print("mismatched embedder rejected:", exc)

# Binary persistence round-trips bit-exactly.
save_dense_index(index, "/tmp/demo-dense-index.bin")
assert load_dense_index("/tmp/demo-dense-index.bin").matrix.tobytes() == index.matrix.tobytes()
print("persisted and reloaded: bit-identical matrix")
