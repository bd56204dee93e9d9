import json

import pytest

from claimlens.core import NEI, REFUTED, SUPPORTED
from claimlens.errors import DatasetError
from claimlens.evaluation import (
    adapt_covert,
    adapt_healthfc,
    adapt_pubmedqa,
    adapt_scifact,
    load_dataset,
    write_dataset,
)
from claimlens.evaluation.datasets import ClaimRecord


def write_jsonl(path, records):
    path.write_text("\n".join(json.dumps(r) for r in records) + "\n", encoding="utf-8")


class TestCanonicalLoader:
    def test_load_filters_nei(self, tmp_path):
        path = tmp_path / "data.jsonl"
        write_jsonl(
            path,
            [
                {"claim_id": "1", "text": "a works", "label": "supported", "evidence": ["e1"]},
                {"claim_id": "2", "text": "b fails", "label": "refuted", "evidence": []},
                {"claim_id": "3", "text": "c unclear", "label": "nei", "evidence": []},
            ],
        )
        records = load_dataset("custom", path)
        assert [r.claim_id for r in records] == ["1", "2"]
        assert records[0].gold_label == SUPPORTED
        assert records[1].gold_label == REFUTED

    def test_only_nei_yields_empty_list(self, tmp_path):
        path = tmp_path / "nei.jsonl"
        write_jsonl(path, [{"claim_id": "1", "text": "x", "label": "nei"}])
        assert load_dataset("custom", path) == []

    def test_unknown_label_names_the_record(self, tmp_path):
        path = tmp_path / "bad.jsonl"
        write_jsonl(path, [{"claim_id": "weird-7", "text": "x", "label": "mystery"}])
        with pytest.raises(DatasetError, match="weird-7"):
            load_dataset("custom", path)

    def test_round_trip(self, tmp_path):
        records = [
            ClaimRecord(claim_id="a", text="t1", gold_label=SUPPORTED, gold_evidence=["e"]),
            ClaimRecord(claim_id="b", text="t2", gold_label=NEI),
        ]
        path = tmp_path / "rt.jsonl"
        write_dataset(records, path)
        loaded = load_dataset("custom", path)
        assert len(loaded) == 1  # NEI dropped on load
        assert loaded[0].claim_id == "a"
        assert loaded[0].gold_evidence == ["e"]


class TestSciFactAdapter:
    def test_labels_and_evidence_resolution(self, tmp_path):
        corpus = tmp_path / "corpus.jsonl"
        write_jsonl(
            corpus,
            [{"doc_id": 42, "title": "T", "abstract": ["First sentence.", "Second sentence."]}],
        )
        claims = tmp_path / "claims.jsonl"
        write_jsonl(
            claims,
            [
                {
                    "id": 1,
                    "claim": "supported claim",
                    "evidence": {"42": [{"sentences": [1], "label": "SUPPORT"}]},
                },
                {
                    "id": 2,
                    "claim": "refuted claim",
                    "evidence": {"42": [{"sentences": [0], "label": "CONTRADICT"}]},
                },
                {"id": 3, "claim": "nei claim", "evidence": {}},
            ],
        )
        records = adapt_scifact(claims, corpus)
        assert [r.gold_label for r in records] == [SUPPORTED, REFUTED, NEI]
        assert records[0].gold_evidence == ["Second sentence."]
        assert records[0].claim_id == "scifact-1"


class TestPubMedQaAdapter:
    def test_yes_no_maybe_mapping(self, tmp_path):
        path = tmp_path / "pqal.json"
        path.write_text(
            json.dumps(
                {
                    "111": {
                        "QUESTION": "does it work?",
                        "CONTEXTS": ["ctx one", "ctx two"],
                        "final_decision": "yes",
                    },
                    "222": {"QUESTION": "harmful?", "CONTEXTS": [], "final_decision": "no"},
                    "333": {"QUESTION": "unclear?", "CONTEXTS": [], "final_decision": "maybe"},
                }
            ),
            encoding="utf-8",
        )
        records = adapt_pubmedqa(path)
        by_id = {r.claim_id: r for r in records}
        assert by_id["pubmedqa-111"].gold_label == SUPPORTED
        assert by_id["pubmedqa-111"].gold_evidence == ["ctx one", "ctx two"]
        assert by_id["pubmedqa-222"].gold_label == REFUTED
        assert by_id["pubmedqa-333"].gold_label == NEI


class TestHealthFcAdapter:
    def test_numeric_label_mapping(self, tmp_path):
        path = tmp_path / "healthfc.csv"
        path.write_text(
            "en_claim,label,en_explanation\n"
            '"Does garlic lower blood pressure?",0,"Trials say yes."\n'
            '"Does X cure Y?",1,"Unclear."\n'
            '"Does sugar cause hyperactivity?",2,"Reviews say no."\n',
            encoding="utf-8",
        )
        records = adapt_healthfc(path)
        assert [r.gold_label for r in records] == [SUPPORTED, NEI, REFUTED]
        assert records[0].gold_evidence == ["Trials say yes."]


class TestCovertAdapter:
    def test_label_strings(self, tmp_path):
        path = tmp_path / "covert.jsonl"
        write_jsonl(
            path,
            [
                {"id": "t1", "claim": "vaccines cause autism", "label": "REFUTES",
                 "evidence": [{"text": "No credible study supports this."}]},
                {"id": "t2", "claim": "masks reduce transmission", "label": "SUPPORTS",
                 "evidence": ["Meta-analyses support it."]},
                {"id": "t3", "claim": "unknowable", "label": "NOT ENOUGH INFO"},
            ],
        )
        records = adapt_covert(path)
        assert [r.gold_label for r in records] == [REFUTED, SUPPORTED, NEI]
        assert records[0].gold_evidence == ["No credible study supports this."]


def test_adapters_feed_canonical_loader(tmp_path):
    path = tmp_path / "pqal.json"
    path.write_text(
        json.dumps({"1": {"QUESTION": "works?", "CONTEXTS": ["c"], "final_decision": "yes"}}),
        encoding="utf-8",
    )
    records = adapt_pubmedqa(path)
    out = tmp_path / "canonical.jsonl"
    write_dataset(records, out)
    loaded = load_dataset("pubmedqa", out)
    assert loaded[0].text == "works?"
    assert loaded[0].dataset == "pubmedqa"
