"""Synthetic planted-evidence benchmark with known ground truth.

Each claim owns a private vocabulary and exactly one planted document whose
body carries a paraphrase sentence sharing at least 80% of the claim's
tokens (prefixed with a negation cue for refuted claims). The planted body
also carries enough claim-vocabulary filler sentences to fill the evidence
budget on its own, so unrelated zero-score sentences never reach the
evidence block. Distractors are drawn from a disjoint, negation-free
vocabulary, which makes the relevant document unambiguous for both
retrievers and gives recall@k an exact answer.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from ..core import REFUTED, SUPPORTED
from ..corpus import Corpus, CorpusStats, Document
from .datasets import ClaimRecord

CLAIM_TOKENS = 10
SHARED_FRACTION = 0.8

_PRIVATE_VOCAB = 12  # tokens per claim; the last two appear only in the document
_FILLER_SENTENCES = 9
_DISTRACTOR_SENTENCES = 3
_DISTRACTOR_SENTENCE_TOKENS = 8


@dataclass
class PlantedBenchmark:
    corpus: Corpus
    records: list[ClaimRecord]
    relevant: dict[str, str]  # claim_id -> planted doc_id

    @property
    def claims(self):
        return [r.claim() for r in self.records]


def _capitalize(tokens: list[str]) -> str:
    words = list(tokens)
    words[0] = words[0].capitalize()
    return " ".join(words)


def generate_planted_benchmark(
    n_claims: int = 200,
    n_distractors: int = 5000,
    seed: int = 202,
) -> PlantedBenchmark:
    """Build the benchmark corpus, claim records gold-labeled alternately
    SUPPORTED/REFUTED, and the claim -> relevant-document map."""
    rng = random.Random(seed)
    # Disjoint from every claim vocabulary and free of negation cues, so a
    # distractor sentence can never flip a verdict.
    distractor_vocab = [f"lexeme{n}" for n in range(800)]

    documents: list[Document] = []
    records: list[ClaimRecord] = []
    relevant: dict[str, str] = {}

    for d in range(n_distractors):
        sentences = [
            _capitalize(rng.sample(distractor_vocab, _DISTRACTOR_SENTENCE_TOKENS)) + "."
            for _ in range(_DISTRACTOR_SENTENCES)
        ]
        documents.append(
            Document(
                doc_id=f"d{d:05d}",
                title=" ".join(rng.sample(distractor_vocab, 3)),
                body=" ".join(sentences),
                language="en",
            )
        )

    n_shared = int(round(CLAIM_TOKENS * SHARED_FRACTION))
    for i in range(n_claims):
        vocab = [f"term{i}x{j}" for j in range(_PRIVATE_VOCAB)]
        claim_tokens = vocab[:CLAIM_TOKENS]
        claim_id = f"claim{i:04d}"
        claim_text = _capitalize(claim_tokens) + "."
        label = SUPPORTED if i % 2 == 0 else REFUTED

        shared = rng.sample(claim_tokens, n_shared)
        if label == SUPPORTED:
            evidence_sentence = _capitalize(shared) + "."
        else:
            evidence_sentence = "No evidence that " + " ".join(shared) + "."
        # Filler sentences reuse claim vocabulary: every one scores > 0 for
        # this claim, so j=10 evidence fills entirely from this document.
        fillers = [
            _capitalize([claim_tokens[(3 * f) % CLAIM_TOKENS],
                         claim_tokens[(3 * f + 1) % CLAIM_TOKENS],
                         vocab[CLAIM_TOKENS + f % 2]]) + "."
            for f in range(_FILLER_SENTENCES)
        ]
        doc_id = f"p{i:04d}"
        documents.append(
            Document(
                doc_id=doc_id,
                title=" ".join(claim_tokens[:3]),
                body=" ".join([evidence_sentence, *fillers]),
                language="en",
            )
        )
        records.append(
            ClaimRecord(
                claim_id=claim_id,
                text=claim_text,
                gold_label=label,
                gold_evidence=[evidence_sentence],
                dataset="planted",
            )
        )
        relevant[claim_id] = doc_id

    rng.shuffle(documents)
    stats = CorpusStats(raw=len(documents), kept=len(documents))
    return PlantedBenchmark(
        corpus=Corpus(documents=documents, source="other", stats=stats),
        records=records,
        relevant=relevant,
    )
