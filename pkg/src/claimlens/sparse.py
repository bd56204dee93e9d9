"""Inverted index with Okapi BM25 ranking.

Scoring uses the smoothed idf ln(1 + (N - df + 0.5)/(df + 0.5)) so that a
term present in every document still contributes a small positive weight,
and the standard Okapi defaults k1=1.2, b=0.75. Only documents sharing at
least one claim term are candidates; everything else scores 0 and is never
returned.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

from .core import Claim, ScoredDocument
from .corpus import Corpus
from .errors import UnknownDocumentError
from .text import tokenize

DEFAULT_K1 = 1.2
DEFAULT_B = 0.75

_FORMAT = "claimlens-sparse-index"
_VERSION = 1


@dataclass
class SparseIndex:
    """Postings keyed by term, plus the BM25 collection statistics."""

    postings: dict[str, list[tuple[str, int]]] = field(default_factory=dict)
    doc_lengths: dict[str, int] = field(default_factory=dict)

    @property
    def n_docs(self) -> int:
        return len(self.doc_lengths)

    @property
    def avgdl(self) -> float:
        if not self.doc_lengths:
            return 0.0
        return sum(self.doc_lengths.values()) / len(self.doc_lengths)


def build_sparse_index(corpus: Corpus) -> SparseIndex:
    """Index `title + " " + body` of every document; postings sorted by doc_id."""
    index = SparseIndex()
    term_counts: dict[str, dict[str, int]] = {}
    for doc in corpus:
        tokens = tokenize(doc.title + " " + doc.body)
        index.doc_lengths[doc.doc_id] = len(tokens)
        for term in tokens:
            per_doc = term_counts.setdefault(term, {})
            per_doc[doc.doc_id] = per_doc.get(doc.doc_id, 0) + 1
    for term in sorted(term_counts):
        index.postings[term] = sorted(term_counts[term].items())
    return index


def _idf(index: SparseIndex, term: str) -> float:
    df = len(index.postings.get(term, ()))
    n = index.n_docs
    return math.log(1.0 + (n - df + 0.5) / (df + 0.5))


def bm25_score(
    index: SparseIndex,
    claim: Claim,
    doc_id: str,
    k1: float = DEFAULT_K1,
    b: float = DEFAULT_B,
) -> float:
    """BM25 score of one document for a claim; duplicate claim terms count once."""
    if doc_id not in index.doc_lengths:
        raise UnknownDocumentError(f"doc_id {doc_id!r} is not indexed")
    dl = index.doc_lengths[doc_id]
    avgdl = index.avgdl
    score = 0.0
    for term in set(tokenize(claim.text)):
        tf = _tf(index, term, doc_id)
        if tf == 0:
            continue
        norm = k1 * (1.0 - b + b * dl / avgdl)
        score += _idf(index, term) * tf * (k1 + 1.0) / (tf + norm)
    return score


def _tf(index: SparseIndex, term: str, doc_id: str) -> int:
    postings = index.postings.get(term)
    if not postings:
        return 0
    lo, hi = 0, len(postings)
    while lo < hi:
        mid = (lo + hi) // 2
        if postings[mid][0] < doc_id:
            lo = mid + 1
        else:
            hi = mid
    if lo < len(postings) and postings[lo][0] == doc_id:
        return postings[lo][1]
    return 0


def retrieve_sparse(
    index: SparseIndex,
    claim: Claim,
    k: int = 10,
    k1: float = DEFAULT_K1,
    b: float = DEFAULT_B,
) -> list[ScoredDocument]:
    """Top-k documents by BM25, ties broken by doc_id ascending.

    Only documents containing at least one claim term are candidates, so
    fewer than k results are returned when fewer documents match.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    terms = set(tokenize(claim.text))
    avgdl = index.avgdl
    scores: dict[str, float] = {}
    for term in terms:
        postings = index.postings.get(term)
        if not postings:
            continue
        idf = _idf(index, term)
        for doc_id, tf in postings:
            dl = index.doc_lengths[doc_id]
            norm = k1 * (1.0 - b + b * dl / avgdl)
            scores[doc_id] = scores.get(doc_id, 0.0) + idf * tf * (k1 + 1.0) / (tf + norm)
    ranked = sorted(scores.items(), key=lambda item: (-item[1], item[0]))[:k]
    return [
        ScoredDocument(doc_id=doc_id, score=score, rank=rank)
        for rank, (doc_id, score) in enumerate(ranked, start=1)
    ]


def save_sparse_index(index: SparseIndex, path) -> None:
    """Persist as a self-describing JSON file; terms and postings stay sorted."""
    payload = {
        "format": _FORMAT,
        "version": _VERSION,
        "n_docs": index.n_docs,
        "doc_lengths": dict(sorted(index.doc_lengths.items())),
        "postings": {
            term: [[doc_id, tf] for doc_id, tf in plist]
            for term, plist in sorted(index.postings.items())
        },
    }
    with open(path, "w", encoding="utf-8") as fp:
        json.dump(payload, fp, ensure_ascii=False, separators=(",", ":"))


def load_sparse_index(path) -> SparseIndex:
    with open(path, encoding="utf-8") as fp:
        payload = json.load(fp)
    if payload.get("format") != _FORMAT:
        raise ValueError(f"not a sparse index file: {path}")
    if payload.get("version") != _VERSION:
        raise ValueError(f"unsupported sparse index version {payload.get('version')}")
    index = SparseIndex()
    index.doc_lengths = {str(k): int(v) for k, v in payload["doc_lengths"].items()}
    index.postings = {
        term: [(str(doc_id), int(tf)) for doc_id, tf in plist]
        for term, plist in payload["postings"].items()
    }
    return index
