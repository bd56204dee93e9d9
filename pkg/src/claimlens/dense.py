"""Vector store with exact cosine-similarity top-k search.

Brute force over a unit-normalized float32 matrix is the reference mode:
at desk scale it is exact, testable, and fast enough. The embedder that
produced an index is recorded and checked at query time, because mixing
embedding spaces corrupts rankings silently.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass

import numpy as np

from .core import Claim, ScoredDocument
from .corpus import Corpus
from .errors import EmbedderMismatchError, EmbeddingError

DEFAULT_BODY_WINDOW = 256

_MAGIC = b"CLDI"
_VERSION = 1


def normalize(vector: np.ndarray) -> np.ndarray:
    """L2-normalize; raises on zero vectors. Idempotent on unit vectors."""
    vector = np.asarray(vector, dtype=np.float32)
    norm = float(np.linalg.norm(vector.astype(np.float64)))
    if norm == 0.0:
        raise EmbeddingError("cannot normalize a zero vector")
    if abs(norm - 1.0) <= 1e-6:
        # Already unit within float32 resolution: dividing again would only
        # add rounding noise.
        return vector
    return (vector.astype(np.float64) / norm).astype(np.float32)


def cosine_similarity(u: np.ndarray, v: np.ndarray) -> float:
    """(u . v) / (|u| |v|); errors on dimension mismatch or zero vectors."""
    u = np.asarray(u, dtype=np.float64)
    v = np.asarray(v, dtype=np.float64)
    if u.shape != v.shape:
        raise EmbeddingError(f"dimension mismatch: {u.shape} vs {v.shape}")
    nu, nv = float(np.linalg.norm(u)), float(np.linalg.norm(v))
    if nu == 0.0 or nv == 0.0:
        raise EmbeddingError("cosine similarity undefined for zero vectors")
    return float(np.dot(u, v) / (nu * nv))


@dataclass
class DenseIndex:
    doc_ids: list[str]
    matrix: np.ndarray  # |doc_ids| x dim, float32, rows unit-norm
    embedder_id: str

    @property
    def dim(self) -> int:
        return int(self.matrix.shape[1])

    def __len__(self) -> int:
        return len(self.doc_ids)

    def __post_init__(self):
        if self.matrix.ndim != 2 or self.matrix.shape[0] != len(self.doc_ids):
            raise ValueError("matrix rows must match doc_ids")
        if not self.embedder_id:
            raise ValueError("embedder_id must be non-empty")


def embedding_text(doc, window: int = DEFAULT_BODY_WINDOW) -> str:
    """Title plus the first `window` whitespace tokens of the body.

    Embedding models have bounded input; abstracts usually fit whole, long
    articles get truncated.
    """
    lead = doc.body.split()[:window]
    return (doc.title + " " + " ".join(lead)).strip()


def build_dense_index(
    corpus: Corpus,
    embedder,
    batch_size: int = 64,
    window: int = DEFAULT_BODY_WINDOW,
    checkpoint_path=None,
) -> DenseIndex:
    """Embed every document in batches and stack the unit-normalized rows.

    On embedder failure the rows built so far are kept as a checkpoint file
    (when a path is given) before the error propagates.
    """
    if batch_size < 1:
        raise ValueError("batch_size must be >= 1")
    doc_ids = [doc.doc_id for doc in corpus]
    texts = [embedding_text(doc, window) for doc in corpus]
    rows: list[np.ndarray] = []
    for start in range(0, len(texts), batch_size):
        batch = texts[start : start + batch_size]
        try:
            vectors = np.asarray(embedder.embed(batch), dtype=np.float32)
        except Exception:
            if checkpoint_path is not None and rows:
                partial = DenseIndex(
                    doc_ids=doc_ids[: len(rows)],
                    matrix=np.vstack(rows),
                    embedder_id=embedder.id,
                )
                save_dense_index(partial, checkpoint_path)
            raise
        norms = np.linalg.norm(vectors, axis=1)
        if np.any(norms == 0.0):
            bad = [batch[i] for i in np.nonzero(norms == 0.0)[0]]
            raise EmbeddingError(
                f"null embedding for document text(s) {bad[:3]!r}; "
                "documents must have token-bearing text"
            )
        rows.extend(vectors / norms[:, None])
    matrix = (
        np.vstack(rows)
        if rows
        else np.zeros((0, getattr(embedder, "dim", 0)), dtype=np.float32)
    )
    return DenseIndex(doc_ids=doc_ids, matrix=matrix.astype(np.float32), embedder_id=embedder.id)


def retrieve_dense(index: DenseIndex, claim_embedding: np.ndarray, k: int = 10) -> list[ScoredDocument]:
    """Exact top-k rows by cosine similarity, ties broken by doc_id ascending."""
    if k < 1:
        raise ValueError("k must be >= 1")
    query = np.asarray(claim_embedding, dtype=np.float32)
    if query.ndim != 1 or query.shape[0] != index.dim:
        raise EmbeddingError(
            f"claim embedding dim {query.shape} does not match index dim {index.dim}"
        )
    query = normalize(query)
    if len(index) == 0:
        return []
    # Rows are unit-norm, so the dot product is the cosine similarity.
    sims = index.matrix.astype(np.float64) @ query.astype(np.float64)
    order = sorted(range(len(index)), key=lambda i: (-sims[i], index.doc_ids[i]))[:k]
    return [
        ScoredDocument(doc_id=index.doc_ids[i], score=float(sims[i]), rank=rank)
        for rank, i in enumerate(order, start=1)
    ]


def retrieve_dense_text(index: DenseIndex, embedder, claim: Claim, k: int = 10) -> list[ScoredDocument]:
    """Embed a claim and query; the embedder must match the one that built the index."""
    if getattr(embedder, "id", None) != index.embedder_id:
        raise EmbedderMismatchError(
            f"index built with {index.embedder_id!r}, queried with {getattr(embedder, 'id', None)!r}"
        )
    vector = np.asarray(embedder.embed([claim.text]), dtype=np.float32)[0]
    return retrieve_dense(index, vector, k=k)


def save_dense_index(index: DenseIndex, path) -> None:
    """Binary layout: magic, version, dim, count, embedder_id, doc_id table,
    then the row-major float32 array. Round-trips bit-exactly."""
    with open(path, "wb") as fp:
        fp.write(_MAGIC)
        fp.write(struct.pack("<III", _VERSION, index.dim, len(index)))
        encoded = index.embedder_id.encode("utf-8")
        fp.write(struct.pack("<I", len(encoded)))
        fp.write(encoded)
        for doc_id in index.doc_ids:
            data = doc_id.encode("utf-8")
            fp.write(struct.pack("<I", len(data)))
            fp.write(data)
        fp.write(np.ascontiguousarray(index.matrix, dtype=np.float32).tobytes())


def load_dense_index(path) -> DenseIndex:
    with open(path, "rb") as fp:
        magic = fp.read(4)
        if magic != _MAGIC:
            raise ValueError(f"not a dense index file: {path}")
        version, dim, count = struct.unpack("<III", fp.read(12))
        if version != _VERSION:
            raise ValueError(f"unsupported dense index version {version}")
        (id_len,) = struct.unpack("<I", fp.read(4))
        embedder_id = fp.read(id_len).decode("utf-8")
        doc_ids = []
        for _ in range(count):
            (n,) = struct.unpack("<I", fp.read(4))
            doc_ids.append(fp.read(n).decode("utf-8"))
        payload = fp.read(count * dim * 4)
        matrix = np.frombuffer(payload, dtype=np.float32).reshape(count, dim).copy()
    return DenseIndex(doc_ids=doc_ids, matrix=matrix, embedder_id=embedder_id)
