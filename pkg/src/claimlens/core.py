"""Small shared value types used by every pipeline stage."""

from __future__ import annotations

from dataclasses import dataclass

SUPPORTED = "SUPPORTED"
REFUTED = "REFUTED"
NEI = "NEI"

BINARY_LABELS = (SUPPORTED, REFUTED)


@dataclass(frozen=True)
class Claim:
    """A short factual statement whose veracity is assessed."""

    claim_id: str
    text: str

    def __post_init__(self):
        if not self.text:
            raise ValueError("claim text must be non-empty")


@dataclass(frozen=True)
class ScoredDocument:
    """One retrieval hit: document id, relevance score, 1-based rank."""

    doc_id: str
    score: float
    rank: int
