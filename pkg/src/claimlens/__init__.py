"""claimlens: open-domain scientific claim verification.

Three-stage pipeline over large document collections: retrieve candidate
documents (BM25 or dense cosine search), select the most claim-relevant
sentences as evidence, and predict a binary SUPPORTED/REFUTED verdict from
the entailment relation between evidence and claim.
"""

from .core import NEI, REFUTED, SUPPORTED, Claim, ScoredDocument
from .corpus import (
    Corpus,
    Document,
    Sentence,
    apply_filters,
    parse_jsonl,
    parse_mediawiki_xml,
    parse_medline_xml,
    segment_sentences,
)
from .dense import (
    DenseIndex,
    build_dense_index,
    cosine_similarity,
    load_dense_index,
    retrieve_dense,
    retrieve_dense_text,
    save_dense_index,
)
from .evidence import EvidenceSentence, EvidenceSet, select_evidence
from .gateway import (
    HashEmbedder,
    HeuristicNli,
    LexicalScorer,
    RemoteEmbedder,
    RemoteNli,
    RemoteSentenceScorer,
    resolve_scorers,
    run_conformance,
)
from .sparse import (
    SparseIndex,
    bm25_score,
    build_sparse_index,
    load_sparse_index,
    retrieve_sparse,
    save_sparse_index,
)
from .text import tokenize
from .verdict import Verdict, predict_concat, predict_majority, verify_from_snippets

__version__ = "0.1.0"

__all__ = [
    "NEI",
    "REFUTED",
    "SUPPORTED",
    "Claim",
    "Corpus",
    "DenseIndex",
    "Document",
    "EvidenceSentence",
    "EvidenceSet",
    "HashEmbedder",
    "HeuristicNli",
    "LexicalScorer",
    "RemoteEmbedder",
    "RemoteNli",
    "RemoteSentenceScorer",
    "ScoredDocument",
    "Sentence",
    "SparseIndex",
    "Verdict",
    "apply_filters",
    "bm25_score",
    "build_dense_index",
    "build_sparse_index",
    "cosine_similarity",
    "load_dense_index",
    "load_sparse_index",
    "parse_jsonl",
    "parse_mediawiki_xml",
    "parse_medline_xml",
    "predict_concat",
    "predict_majority",
    "resolve_scorers",
    "retrieve_dense",
    "retrieve_dense_text",
    "retrieve_sparse",
    "run_conformance",
    "save_dense_index",
    "save_sparse_index",
    "segment_sentences",
    "select_evidence",
    "tokenize",
    "verify_from_snippets",
]
