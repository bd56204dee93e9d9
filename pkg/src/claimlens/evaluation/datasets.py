"""Claim datasets: canonical JSONL loader plus per-release adapters.

Canonical record, one JSON object per line:

    {"claim_id": ..., "text": ..., "label": "supported"|"refuted"|"nei",
     "evidence": ["...", ...]}

Adapters convert each dataset's native release format into this shape and
own the label mapping. Claims labeled NEI are removed by the loader: the
task is binary, and the datasets that do carry NEI define it differently.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field
from pathlib import Path

from ..core import NEI, REFUTED, SUPPORTED, Claim
from ..errors import DatasetError

DATASETS = ("scifact", "pubmedqa", "healthfc", "covert")

_CANONICAL_LABELS = {
    "supported": SUPPORTED,
    "refuted": REFUTED,
    "nei": NEI,
}


@dataclass
class ClaimRecord:
    claim_id: str
    text: str
    gold_label: str  # SUPPORTED | REFUTED | NEI
    gold_evidence: list[str] = field(default_factory=list)
    dataset: str = "custom"

    def claim(self) -> Claim:
        return Claim(claim_id=self.claim_id, text=self.text)


def load_dataset(name: str, path) -> list[ClaimRecord]:
    """Load a canonical JSONL dataset file; NEI records are filtered out."""
    records: list[ClaimRecord] = []
    with open(path, encoding="utf-8") as fp:
        for lineno, line in enumerate(fp, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                rec = json.loads(line)
            except json.JSONDecodeError as exc:
                raise DatasetError(f"{path}:{lineno}: invalid JSON: {exc}") from exc
            raw_label = str(rec.get("label", "")).lower()
            if raw_label not in _CANONICAL_LABELS:
                raise DatasetError(
                    f"{path}:{lineno}: unknown label {rec.get('label')!r} "
                    f"for claim {rec.get('claim_id')!r}"
                )
            label = _CANONICAL_LABELS[raw_label]
            if label == NEI:
                continue
            text = str(rec.get("text", ""))
            if not text:
                raise DatasetError(f"{path}:{lineno}: empty claim text")
            records.append(
                ClaimRecord(
                    claim_id=str(rec.get("claim_id", lineno)),
                    text=text,
                    gold_label=label,
                    gold_evidence=[str(e) for e in rec.get("evidence", [])],
                    dataset=name,
                )
            )
    return records


def write_dataset(records: list[ClaimRecord], path) -> None:
    """Serialize records to canonical JSONL (including NEI, for adapters)."""
    inverse = {SUPPORTED: "supported", REFUTED: "refuted", NEI: "nei"}
    with open(path, "w", encoding="utf-8") as fp:
        for rec in records:
            fp.write(
                json.dumps(
                    {
                        "claim_id": rec.claim_id,
                        "text": rec.text,
                        "label": inverse[rec.gold_label],
                        "evidence": rec.gold_evidence,
                    },
                    ensure_ascii=False,
                )
                + "\n"
            )


# ---------------------------------------------------------------------------
# release-format adapters


def adapt_scifact(claims_path, corpus_path=None) -> list[ClaimRecord]:
    """SciFact claims JSONL: per-claim evidence cites corpus sentences by index.

    A claim with evidence maps SUPPORT -> supported, CONTRADICT -> refuted;
    claims with no evidence entries are NEI (no evidence documents in the
    release corpus). The release corpus provides sentence text when given.
    """
    sentences_by_doc: dict[str, list[str]] = {}
    if corpus_path is not None:
        with open(corpus_path, encoding="utf-8") as fp:
            for line in fp:
                if not line.strip():
                    continue
                doc = json.loads(line)
                sentences_by_doc[str(doc["doc_id"])] = list(doc.get("abstract", []))

    records: list[ClaimRecord] = []
    with open(claims_path, encoding="utf-8") as fp:
        for line in fp:
            if not line.strip():
                continue
            rec = json.loads(line)
            evidence = rec.get("evidence") or {}
            labels: set[str] = set()
            texts: list[str] = []
            for doc_id, items in evidence.items():
                for item in items:
                    labels.add(item.get("label", ""))
                    for idx in item.get("sentences", []):
                        doc_sents = sentences_by_doc.get(str(doc_id))
                        if doc_sents and 0 <= idx < len(doc_sents):
                            texts.append(doc_sents[idx].strip())
            if not labels:
                gold = NEI
            elif labels == {"SUPPORT"}:
                gold = SUPPORTED
            elif labels == {"CONTRADICT"}:
                gold = REFUTED
            else:
                raise DatasetError(f"scifact claim {rec.get('id')}: mixed labels {labels}")
            records.append(
                ClaimRecord(
                    claim_id=f"scifact-{rec['id']}",
                    text=str(rec["claim"]),
                    gold_label=gold,
                    gold_evidence=texts,
                    dataset="scifact",
                )
            )
    return records


def adapt_pubmedqa(path) -> list[ClaimRecord]:
    """PubMedQA labeled JSON: final_decision yes/no/maybe; contexts are evidence."""
    with open(path, encoding="utf-8") as fp:
        data = json.load(fp)
    mapping = {"yes": SUPPORTED, "no": REFUTED, "maybe": NEI}
    records: list[ClaimRecord] = []
    for pmid, item in data.items():
        decision = str(item.get("final_decision", "")).lower()
        if decision not in mapping:
            raise DatasetError(f"pubmedqa {pmid}: unknown final_decision {decision!r}")
        records.append(
            ClaimRecord(
                claim_id=f"pubmedqa-{pmid}",
                text=str(item["QUESTION"]),
                gold_label=mapping[decision],
                gold_evidence=[str(c) for c in item.get("CONTEXTS", [])],
                dataset="pubmedqa",
            )
        )
    return records


def adapt_healthfc(path) -> list[ClaimRecord]:
    """HealthFC CSV: en_claim / en_explanation with label 0=supported, 1=NEI, 2=refuted."""
    mapping = {"0": SUPPORTED, "1": NEI, "2": REFUTED}
    records: list[ClaimRecord] = []
    with open(path, encoding="utf-8", newline="") as fp:
        for i, row in enumerate(csv.DictReader(fp)):
            raw = str(row.get("label", "")).strip()
            if raw not in mapping:
                raise DatasetError(f"healthfc row {i}: unknown label {raw!r}")
            evidence = [
                s for s in (row.get("en_sentences") or row.get("en_explanation") or "").split("\n") if s.strip()
            ]
            records.append(
                ClaimRecord(
                    claim_id=f"healthfc-{i}",
                    text=str(row["en_claim"]),
                    gold_label=mapping[raw],
                    gold_evidence=evidence,
                    dataset="healthfc",
                )
            )
    return records


def adapt_covert(path) -> list[ClaimRecord]:
    """CoVERT JSONL: tweet claims with SUPPORTS/REFUTES/NOT ENOUGH INFO labels."""
    mapping = {
        "supports": SUPPORTED,
        "supported": SUPPORTED,
        "refutes": REFUTED,
        "refuted": REFUTED,
        "not enough info": NEI,
        "not_enough_info": NEI,
        "nei": NEI,
    }
    records: list[ClaimRecord] = []
    with open(path, encoding="utf-8") as fp:
        for lineno, line in enumerate(fp, start=1):
            if not line.strip():
                continue
            rec = json.loads(line)
            raw = str(rec.get("label", "")).strip().lower()
            if raw not in mapping:
                raise DatasetError(f"covert line {lineno}: unknown label {raw!r}")
            evidence = []
            for ev in rec.get("evidence", []):
                evidence.append(ev if isinstance(ev, str) else str(ev.get("text", "")))
            records.append(
                ClaimRecord(
                    claim_id=f"covert-{rec.get('id', lineno)}",
                    text=str(rec.get("claim") or rec.get("text")),
                    gold_label=mapping[raw],
                    gold_evidence=[e for e in evidence if e],
                    dataset="covert",
                )
            )
    return records


ADAPTERS = {
    "scifact": adapt_scifact,
    "pubmedqa": adapt_pubmedqa,
    "healthfc": adapt_healthfc,
    "covert": adapt_covert,
}
