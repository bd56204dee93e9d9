"""Select the globally best evidence sentences from retrieved documents.

Selection is global across all retrieved documents (no per-document quota):
every candidate sentence is scored against the claim and the top j survive.
Sentences shorter than three tokens are excluded because headers and
fragments pollute evidence.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .core import Claim, ScoredDocument
from .corpus import Document, Sentence, segment_sentences
from .text import tokenize

MIN_SENTENCE_TOKENS = 3
DEFAULT_J = 10


@dataclass(frozen=True)
class EvidenceSentence:
    sentence: Sentence
    score: float
    source_rank: int  # rank of the source document in the retrieval output


@dataclass
class EvidenceSet:
    claim_id: str
    sentences: list[EvidenceSentence] = field(default_factory=list)
    j: int = DEFAULT_J

    def __len__(self) -> int:
        return len(self.sentences)

    def texts(self) -> list[str]:
        return [e.sentence.text for e in self.sentences]

    def by_doc(self) -> dict[str, list[EvidenceSentence]]:
        grouped: dict[str, list[EvidenceSentence]] = {}
        for ev in self.sentences:
            grouped.setdefault(ev.sentence.doc_id, []).append(ev)
        return grouped

    def to_dict(self) -> dict:
        return {
            "claim_id": self.claim_id,
            "sentences": [
                {
                    "doc_id": ev.sentence.doc_id,
                    "index": ev.sentence.index,
                    "text": ev.sentence.text,
                    "score": ev.score,
                    "source_rank": ev.source_rank,
                }
                for ev in self.sentences
            ],
        }


def select_evidence(
    claim: Claim,
    retrieved: list[tuple[ScoredDocument, Document]],
    scorer,
    j: int = DEFAULT_J,
) -> EvidenceSet:
    """Score every candidate sentence of every retrieved document and keep the
    top j, ordered by score descending with (source_rank, sentence index) as
    the deterministic tie-break.

    All-empty documents yield an empty EvidenceSet; the caller decides the
    verdict policy for that case.
    """
    if j < 1:
        raise ValueError("j must be >= 1")
    candidates: list[tuple[Sentence, int]] = []
    for hit, doc in retrieved:
        if hit.doc_id != doc.doc_id:
            raise ValueError(f"retrieval hit {hit.doc_id!r} paired with document {doc.doc_id!r}")
        for sentence in segment_sentences(doc):
            if len(tokenize(sentence.text)) < MIN_SENTENCE_TOKENS:
                continue
            candidates.append((sentence, hit.rank))
    if not candidates:
        return EvidenceSet(claim_id=claim.claim_id, sentences=[], j=j)
    scores = scorer.score_sentences(claim.text, [s.text for s, _ in candidates])
    scored = [
        EvidenceSentence(sentence=s, score=float(score), source_rank=rank)
        for (s, rank), score in zip(candidates, scores)
    ]
    scored.sort(key=lambda ev: (-ev.score, ev.source_rank, ev.sentence.index))
    return EvidenceSet(claim_id=claim.claim_id, sentences=scored[:j], j=j)
