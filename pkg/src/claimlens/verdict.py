"""Binary verdicts from claim and evidence via the NLI interface.

The three-way NLI output collapses to two classes by comparing entailment
and contradiction mass directly; neutral mass is ignored and an exact tie
goes to SUPPORTED. Determinism beats cleverness here: the rule is pinned by
tests. Two aggregation modes exist: `concat` runs NLI once over the joined
evidence block, `majority` votes per source document.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import REFUTED, SUPPORTED, Claim
from .errors import EmptyEvidenceError
from .evidence import EvidenceSet

EVIDENCE_SEPARATOR = " "


@dataclass
class Verdict:
    claim_id: str
    label: str  # SUPPORTED | REFUTED
    mode: str  # concat | majority
    entail_mass: float
    contradict_mass: float
    per_doc_votes: list[tuple[str, str]] | None = None

    def to_dict(self) -> dict:
        out = {
            "claim_id": self.claim_id,
            "label": self.label,
            "mode": self.mode,
            "entail_mass": self.entail_mass,
            "contradict_mass": self.contradict_mass,
        }
        if self.per_doc_votes is not None:
            out["votes"] = [[doc_id, label] for doc_id, label in self.per_doc_votes]
        return out


def _decide(entail: float, contradict: float) -> str:
    return SUPPORTED if entail >= contradict else REFUTED


def _concat_verdict(claim: Claim, texts: list[str], nli, mode: str) -> Verdict:
    premise = EVIDENCE_SEPARATOR.join(texts)
    entail, _, contradict = nli.nli(premise, claim.text)
    return Verdict(
        claim_id=claim.claim_id,
        label=_decide(entail, contradict),
        mode=mode,
        entail_mass=entail,
        contradict_mass=contradict,
    )


def predict_concat(claim: Claim, evidence: EvidenceSet, nli) -> Verdict:
    """One NLI call: premise is the evidence block in EvidenceSet order,
    hypothesis is the claim."""
    if len(evidence) == 0:
        raise EmptyEvidenceError(f"no evidence for claim {claim.claim_id!r}")
    return _concat_verdict(claim, evidence.texts(), nli, mode="concat")


def predict_majority(claim: Claim, evidence_by_doc: dict[str, list], nli) -> Verdict:
    """Per-document concat verdicts, aggregated by majority vote (tie: SUPPORTED).

    With a single document this equals predict_concat on that document's
    evidence. Documents are visited in doc_id order for determinism.
    """
    if not evidence_by_doc or all(not evs for evs in evidence_by_doc.values()):
        raise EmptyEvidenceError(f"no evidence for claim {claim.claim_id!r}")
    votes: list[tuple[str, str]] = []
    entail_total = 0.0
    contradict_total = 0.0
    for doc_id in sorted(evidence_by_doc):
        evs = evidence_by_doc[doc_id]
        if not evs:
            continue
        premise = EVIDENCE_SEPARATOR.join(ev.sentence.text for ev in evs)
        entail, _, contradict = nli.nli(premise, claim.text)
        votes.append((doc_id, _decide(entail, contradict)))
        entail_total += entail
        contradict_total += contradict
    supported = sum(1 for _, label in votes if label == SUPPORTED)
    refuted = len(votes) - supported
    return Verdict(
        claim_id=claim.claim_id,
        label=SUPPORTED if supported >= refuted else REFUTED,
        mode="majority",
        entail_mass=entail_total,
        contradict_mass=contradict_total,
        per_doc_votes=votes,
    )


def verify_from_snippets(claim: Claim, snippets: list[str], nli) -> Verdict:
    """Concat-mode verdict over externally supplied snippets, in given order."""
    snippets = [s for s in snippets if s and s.strip()]
    if not snippets:
        raise EmptyEvidenceError(f"no snippets for claim {claim.claim_id!r}")
    return _concat_verdict(claim, snippets, nli, mode="concat")
