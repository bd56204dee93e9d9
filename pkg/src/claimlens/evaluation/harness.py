"""End-to-end evaluation: run the pipeline over claim records and tabulate
precision/recall/F1 per dataset and configuration.

Claims are processed independently but reduced in claim_id order, and report
JSON is emitted with sorted keys and no timestamps, so identical inputs and
deterministic scorers reproduce reports byte for byte.
"""

from __future__ import annotations

import json
import logging
import re
from dataclasses import dataclass, field
from pathlib import Path

from ..core import REFUTED, SUPPORTED, Claim
from ..corpus import Document
from ..dense import DenseIndex, retrieve_dense_text
from ..errors import ClaimLensError, EmptyEvidenceError
from ..evidence import EvidenceSet, select_evidence
from ..sparse import SparseIndex, retrieve_sparse
from ..verdict import predict_concat, predict_majority, verify_from_snippets
from .datasets import ClaimRecord
from .metrics import Metrics, compute_metrics

logger = logging.getLogger(__name__)

RETRIEVERS = ("bm25", "dense")
EMPTY_EVIDENCE_LABELS = {"refuted": REFUTED, "supported": SUPPORTED}


@dataclass
class EvalSource:
    """A knowledge source: document store plus the indexes built over it."""

    name: str
    documents: dict[str, Document]
    sparse: SparseIndex | None = None
    dense: DenseIndex | None = None

    def lookup(self, doc_id: str) -> Document:
        return self.documents[doc_id]


@dataclass
class EvalRow:
    dataset: str
    source: str
    retriever: str
    k: int | None
    j: int | None
    n_claims: int
    metrics: Metrics
    n_skipped: int = 0
    n_empty_evidence: int = 0
    recall_at_k: float | None = None

    def to_dict(self) -> dict:
        out = {
            "dataset": self.dataset,
            "source": self.source,
            "retriever": self.retriever,
            "k": self.k,
            "j": self.j,
            "n_claims": self.n_claims,
            "precision": self.metrics.precision,
            "recall": self.metrics.recall,
            "f1_binary": self.metrics.f1_binary,
            "f1_macro": self.metrics.f1_macro,
            "confusion": self.metrics.confusion.to_dict(),
            "n_skipped": self.n_skipped,
            "n_empty_evidence": self.n_empty_evidence,
        }
        if self.recall_at_k is not None:
            out["recall_at_k"] = self.recall_at_k
        return out


@dataclass
class EvalReport:
    rows: list[EvalRow] = field(default_factory=list)
    config: dict = field(default_factory=dict)

    def to_json(self) -> str:
        payload = {"rows": [r.to_dict() for r in self.rows], "config": self.config}
        return json.dumps(payload, sort_keys=True, indent=2) + "\n"

    def format_table(self) -> str:
        """Aligned text table in the Precision / Recall / F1 column order."""
        header = (
            f"{'Source':<12} {'Dataset':<10} {'Retriever':<9} {'k':>3} {'j':>3} "
            f"{'Precision':>9} {'Recall':>9} {'F1':>9} {'F1 Macro':>9} {'N':>6}"
        )
        lines = [header, "-" * len(header)]
        for r in self.rows:
            m = r.metrics
            lines.append(
                f"{r.source:<12} {r.dataset:<10} {r.retriever:<9} "
                f"{r.k if r.k is not None else '-':>3} {r.j if r.j is not None else '-':>3} "
                f"{m.precision * 100:>9.1f} {m.recall * 100:>9.1f} "
                f"{m.f1_binary * 100:>9.1f} {m.f1_macro * 100:>9.1f} {r.n_claims:>6}"
            )
        return "\n".join(lines)


def _artifact_path(directory: Path, claim_id: str) -> Path:
    safe = re.sub(r"[^A-Za-z0-9._-]", "_", claim_id)
    return directory / f"{safe}.json"


def _write_artifact(directory, claim: Claim, retrieved, evidence, verdict_obj) -> None:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    payload = {
        "claim": {"claim_id": claim.claim_id, "text": claim.text},
        "retrieved": [
            {"doc_id": hit.doc_id, "score": hit.score, "rank": hit.rank}
            for hit, _ in retrieved
        ],
        "evidence": evidence.to_dict() if evidence is not None else None,
        "verdict": verdict_obj.to_dict() if verdict_obj is not None else None,
    }
    with open(_artifact_path(directory, claim.claim_id), "w", encoding="utf-8") as fp:
        fp.write(json.dumps(payload, sort_keys=True, ensure_ascii=False, indent=2) + "\n")


def run_gold_evidence_eval(records: list[ClaimRecord], nli) -> EvalReport:
    """Closed-domain baseline: verdicts over the gold evidence shipped with the
    datasets. Records without gold evidence are skipped and counted."""
    if not records:
        raise ValueError("no records to evaluate")
    by_dataset: dict[str, list[ClaimRecord]] = {}
    for rec in sorted(records, key=lambda r: r.claim_id):
        by_dataset.setdefault(rec.dataset, []).append(rec)

    report = EvalReport(config={"mode": "gold-evidence"})
    for dataset in sorted(by_dataset):
        preds: list[str] = []
        golds: list[str] = []
        skipped = 0
        for rec in by_dataset[dataset]:
            if not rec.gold_evidence:
                skipped += 1
                continue
            verdict_obj = verify_from_snippets(rec.claim(), rec.gold_evidence, nli)
            preds.append(verdict_obj.label)
            golds.append(rec.gold_label)
        if not preds:
            raise ClaimLensError(f"dataset {dataset!r}: no records with gold evidence")
        report.rows.append(
            EvalRow(
                dataset=dataset,
                source="gold",
                retriever="-",
                k=None,
                j=None,
                n_claims=len(preds),
                metrics=compute_metrics(preds, golds),
                n_skipped=skipped,
            )
        )
    return report


def _retrieve(source: EvalSource, retriever: str, claim: Claim, k: int, embedder):
    if retriever == "bm25":
        if source.sparse is None:
            raise ClaimLensError(f"source {source.name!r} has no sparse index")
        hits = retrieve_sparse(source.sparse, claim, k=k)
    elif retriever == "dense":
        if source.dense is None:
            raise ClaimLensError(f"source {source.name!r} has no dense index")
        if embedder is None:
            raise ClaimLensError("dense retrieval needs an embedder")
        hits = retrieve_dense_text(source.dense, embedder, claim, k=k)
    else:
        raise ValueError(f"unknown retriever {retriever!r}")
    return [(hit, source.lookup(hit.doc_id)) for hit in hits]


def run_open_domain_eval(
    records: list[ClaimRecord],
    source: EvalSource,
    retriever: str,
    k: int = 10,
    j: int = 10,
    *,
    sentence_scorer,
    nli,
    embedder=None,
    verdict_mode: str = "concat",
    empty_evidence_label: str = "refuted",
    artifact_dir=None,
    relevant: dict[str, str] | None = None,
    config: dict | None = None,
) -> EvalReport:
    """Full pipeline per claim: retrieve -> select evidence -> verdict.

    Claims whose retrieval or evidence comes back empty receive the
    configured fallback label (REFUTED by default) so every claim is
    counted. When `relevant` maps claim_ids to their one relevant document,
    the row also carries recall@k.
    """
    if not records:
        raise ValueError("no records to evaluate")
    if verdict_mode not in ("concat", "majority"):
        raise ValueError(f"unknown verdict mode {verdict_mode!r}")
    if empty_evidence_label not in EMPTY_EVIDENCE_LABELS:
        raise ValueError(f"unknown empty-evidence policy {empty_evidence_label!r}")
    fallback_label = EMPTY_EVIDENCE_LABELS[empty_evidence_label]

    preds: list[str] = []
    golds: list[str] = []
    n_empty = 0
    relevant_hits = 0
    dataset = records[0].dataset

    for rec in sorted(records, key=lambda r: r.claim_id):
        claim = rec.claim()
        retrieved = _retrieve(source, retriever, claim, k, embedder)
        if relevant is not None and rec.claim_id in relevant:
            if any(hit.doc_id == relevant[rec.claim_id] for hit, _ in retrieved):
                relevant_hits += 1
        evidence = select_evidence(claim, retrieved, sentence_scorer, j=j) if retrieved else EvidenceSet(claim_id=claim.claim_id, j=j)
        verdict_obj = None
        try:
            if verdict_mode == "majority":
                verdict_obj = predict_majority(claim, evidence.by_doc(), nli)
            else:
                verdict_obj = predict_concat(claim, evidence, nli)
            label = verdict_obj.label
        except EmptyEvidenceError:
            logger.info("claim %s: no evidence, counted as %s", rec.claim_id, fallback_label)
            n_empty += 1
            label = fallback_label
        preds.append(label)
        golds.append(rec.gold_label)
        if artifact_dir is not None:
            _write_artifact(artifact_dir, claim, retrieved, evidence, verdict_obj)

    row = EvalRow(
        dataset=dataset,
        source=source.name,
        retriever=retriever,
        k=k,
        j=j,
        n_claims=len(preds),
        metrics=compute_metrics(preds, golds),
        n_empty_evidence=n_empty,
        recall_at_k=(relevant_hits / len(relevant)) if relevant else None,
    )
    effective = {
        "retriever": retriever,
        "k": k,
        "j": j,
        "verdict_mode": verdict_mode,
        "empty_evidence_label": empty_evidence_label,
        "source": source.name,
    }
    if config:
        effective.update(config)
    return EvalReport(rows=[row], config=effective)


def run_sweep(
    records: list[ClaimRecord],
    source: EvalSource,
    retriever: str,
    ks: list[int],
    js: list[int],
    artifact_dir=None,
    **kwargs,
) -> EvalReport:
    """One report row per (k, j) configuration, in sweep order.

    Artifacts of different configurations land in per-config subdirectories
    so the sweep keeps every claim's trace."""
    report = EvalReport()
    multi = len(ks) * len(js) > 1
    for k in ks:
        for j in js:
            config_dir = artifact_dir
            if artifact_dir is not None and multi:
                config_dir = Path(artifact_dir) / f"k{k}-j{j}"
            partial = run_open_domain_eval(
                records, source, retriever, k=k, j=j, artifact_dir=config_dir, **kwargs
            )
            report.rows.extend(partial.rows)
            report.config = partial.config | {"k": sorted(set(ks)), "j": sorted(set(js))}
    return report
