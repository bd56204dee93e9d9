import json
import sys

import pytest
from click.testing import CliRunner

from claimlens.cli import cli, main
from claimlens.corpus import write_jsonl
from claimlens.evaluation import generate_planted_benchmark, write_dataset

from helpers import ReferenceServer


@pytest.fixture(scope="module")
def benchmark_files(tmp_path_factory):
    root = tmp_path_factory.mktemp("cli-bench")
    bench = generate_planted_benchmark(n_claims=12, n_distractors=120, seed=29)
    corpus_path = root / "corpus.jsonl"
    with open(corpus_path, "w", encoding="utf-8") as fp:
        write_jsonl(bench.corpus, fp)
    data_path = root / "dataset.jsonl"
    write_dataset(bench.records, data_path)
    return root, corpus_path, data_path, bench


@pytest.fixture()
def runner():
    return CliRunner()


def test_ingest_jsonl_and_stats(runner, tmp_path):
    src = tmp_path / "raw.jsonl"
    src.write_text(
        '{"doc_id": "a", "title": "", "body": "All good here.", "language": "en"}\n'
        '{"doc_id": "b", "title": "", "body": "", "language": "en"}\n'
        '{"doc_id": "c", "title": "", "body": "Chopped of", "language": "en"}\n'
        '{"doc_id": "d", "title": "", "body": "Nicht englisch text.", "language": "de"}\n',
        encoding="utf-8",
    )
    out = tmp_path / "corpus.jsonl"
    result = runner.invoke(
        cli,
        ["ingest", str(src), str(out), "--format", "jsonl",
         "--filters", "non_english,no_abstract,unfinished_abstract"],
    )
    assert result.exit_code == 0, result.output
    stats = json.loads((tmp_path / "corpus.jsonl.stats.json").read_text())
    assert stats["parse"] == {"raw": 4, "kept": 4, "dropped": {}}
    assert stats["filters"]["kept"] == 1
    assert stats["filters"]["dropped"] == {
        "non_english": 1, "no_abstract": 1, "unfinished_abstract": 1,
    }
    assert out.read_text().count("\n") == 1


def test_ingest_empty_file_warns_but_succeeds(runner, tmp_path):
    src = tmp_path / "empty.jsonl"
    src.write_text("", encoding="utf-8")
    out = tmp_path / "out.jsonl"
    result = runner.invoke(cli, ["ingest", str(src), str(out)])
    assert result.exit_code == 0
    assert "warning" in result.output


def test_ingest_unknown_format_is_usage_error(runner, tmp_path):
    src = tmp_path / "x.bin"
    src.write_text("")
    result = runner.invoke(cli, ["ingest", str(src), str(src) + ".out", "--format", "parquet"])
    assert result.exit_code == 2


def test_ingest_strict_mode_fails_on_malformed(runner, tmp_path):
    src = tmp_path / "bad.jsonl"
    src.write_text('{"doc_id": "a", "title": "", "body": "x"}\n{oops\n', encoding="utf-8")
    out = tmp_path / "out.jsonl"
    result = runner.invoke(cli, ["ingest", str(src), str(out), "--strict"])
    assert result.exit_code != 0


def test_ingest_medline_fixture(runner, tmp_path):
    src = tmp_path / "medline.xml"
    src.write_text(
        """<PubmedArticleSet>
        <PubmedArticle><MedlineCitation><PMID>1</PMID>
          <Article><ArticleTitle>T</ArticleTitle>
          <Abstract><AbstractText>Fine result.</AbstractText></Abstract>
          <Language>eng</Language></Article>
        </MedlineCitation></PubmedArticle>
        <PubmedArticle><MedlineCitation><PMID>2</PMID>
          <Article><ArticleTitle>U</ArticleTitle>
          <Language>ger</Language></Article>
        </MedlineCitation></PubmedArticle>
        </PubmedArticleSet>""",
        encoding="utf-8",
    )
    out = tmp_path / "corpus.jsonl"
    result = runner.invoke(
        cli,
        ["ingest", str(src), str(out), "--format", "medline-xml",
         "--filters", "non_english,no_abstract,unfinished_abstract"],
    )
    assert result.exit_code == 0, result.output
    stats = json.loads((tmp_path / "corpus.jsonl.stats.json").read_text())
    assert stats["filters"]["dropped"]["non_english"] == 1


class TestIndexCommand:
    def test_sparse_round_trip(self, runner, benchmark_files, tmp_path):
        _, corpus_path, _, _ = benchmark_files
        out = tmp_path / "sparse.json"
        result = runner.invoke(cli, ["index", str(corpus_path), str(out), "--kind", "sparse"])
        assert result.exit_code == 0, result.output
        assert out.exists()

    def test_dense_fallback_deterministic(self, runner, benchmark_files, tmp_path):
        _, corpus_path, _, _ = benchmark_files
        a, b = tmp_path / "a.bin", tmp_path / "b.bin"
        for out in (a, b):
            result = runner.invoke(
                cli, ["index", str(corpus_path), str(out), "--kind", "dense", "--fallback"]
            )
            assert result.exit_code == 0, result.output
        assert a.read_bytes() == b.read_bytes()

    def test_dense_without_gateway_or_fallback_fails(self, runner, benchmark_files, tmp_path):
        _, corpus_path, _, _ = benchmark_files
        result = runner.invoke(
            cli, ["index", str(corpus_path), str(tmp_path / "x.bin"), "--kind", "dense"],
            env={"CLAIMLENS_GATEWAY": ""},
        )
        assert result.exit_code != 0

    def test_dense_with_unreachable_gateway_fails(self, runner, benchmark_files, tmp_path):
        _, corpus_path, _, _ = benchmark_files
        result = runner.invoke(
            cli,
            ["index", str(corpus_path), str(tmp_path / "x.bin"), "--kind", "dense",
             "--gateway", "http://127.0.0.1:1"],
        )
        assert result.exit_code != 0


@pytest.fixture(scope="module")
def sparse_index_file(benchmark_files, tmp_path_factory):
    _, corpus_path, _, _ = benchmark_files
    out = tmp_path_factory.mktemp("idx") / "sparse.json"
    CliRunner().invoke(cli, ["index", str(corpus_path), str(out), "--kind", "sparse"])
    return out


class TestVerifyCommand:
    def test_planted_claim_supported(self, runner, benchmark_files, sparse_index_file):
        _, corpus_path, _, bench = benchmark_files
        record = bench.records[0]
        assert record.gold_label == "SUPPORTED"
        result = runner.invoke(
            cli,
            ["verify", "--claim", record.text, "--claim-id", record.claim_id,
             "--index", str(sparse_index_file), "--corpus", str(corpus_path),
             "--kind", "sparse", "--fallback"],
        )
        assert result.exit_code == 0, result.output
        payload = json.loads(result.output)
        assert payload["verdict"]["label"] == "SUPPORTED"
        top_doc = payload["evidence"]["sentences"][0]["doc_id"]
        assert top_doc == bench.relevant[record.claim_id]

    def test_unknown_vocabulary_hits_no_evidence_path(self, runner, benchmark_files, sparse_index_file):
        _, corpus_path, _, _ = benchmark_files
        result = runner.invoke(
            cli,
            ["verify", "--claim", "totally foreign vocabulary here",
             "--index", str(sparse_index_file), "--corpus", str(corpus_path),
             "--kind", "sparse", "--fallback"],
        )
        assert result.exit_code == 1
        assert "NO_EVIDENCE" in result.output

    def test_snippet_mode_bypasses_retrieval(self, runner, tmp_path):
        snippets = tmp_path / "snippets.json"
        snippets.write_text(json.dumps(["the drug reduces severe pain quickly"]))
        result = runner.invoke(
            cli,
            ["verify", "--claim", "the drug reduces severe pain quickly",
             "--snippets", str(snippets), "--fallback"],
        )
        assert result.exit_code == 0, result.output
        payload = json.loads(result.output)
        assert payload["verdict"]["label"] == "SUPPORTED"

    def test_out_of_sweep_k_rejected(self, runner, benchmark_files, sparse_index_file):
        _, corpus_path, _, bench = benchmark_files
        result = runner.invoke(
            cli,
            ["verify", "--claim", bench.records[0].text, "--k", "7",
             "--index", str(sparse_index_file), "--corpus", str(corpus_path),
             "--kind", "sparse", "--fallback"],
        )
        assert result.exit_code == 2

    def test_allow_any_k_overrides(self, runner, benchmark_files, sparse_index_file):
        _, corpus_path, _, bench = benchmark_files
        result = runner.invoke(
            cli,
            ["verify", "--claim", bench.records[0].text, "--k", "7", "--allow-any-k",
             "--index", str(sparse_index_file), "--corpus", str(corpus_path),
             "--kind", "sparse", "--fallback"],
        )
        assert result.exit_code == 0, result.output


class TestEvaluateCommand:
    def test_gold_evidence_fixture_perfect(self, runner, benchmark_files, tmp_path):
        _, _, data_path, _ = benchmark_files
        report_path = tmp_path / "report.json"
        result = runner.invoke(
            cli,
            ["evaluate", str(data_path), "--dataset", "planted", "--gold-evidence",
             "--fallback", "--report", str(report_path)],
        )
        assert result.exit_code == 0, result.output
        report = json.loads(report_path.read_text())
        assert report["rows"][0]["f1_binary"] == 1.0

    def test_retriever_rows_differ_only_in_retriever_column(self, runner, benchmark_files, tmp_path):
        root, corpus_path, data_path, _ = benchmark_files
        sparse_path = root / "sparse.idx"
        dense_path = root / "dense.idx"
        runner.invoke(cli, ["index", str(corpus_path), str(sparse_path), "--kind", "sparse"])
        runner.invoke(cli, ["index", str(corpus_path), str(dense_path), "--kind", "dense", "--fallback"])
        rows = {}
        for retriever, index_path in (("bm25", sparse_path), ("dense", dense_path)):
            report_path = tmp_path / f"{retriever}.json"
            result = runner.invoke(
                cli,
                ["evaluate", str(data_path), "--dataset", "planted",
                 "--index", str(index_path), "--corpus", str(corpus_path),
                 "--retriever", retriever, "--fallback", "--report", str(report_path)],
            )
            assert result.exit_code == 0, result.output
            rows[retriever] = json.loads(report_path.read_text())["rows"][0]
        differing = {
            key for key in rows["bm25"]
            if rows["bm25"][key] != rows["dense"][key]
        }
        assert differing <= {"retriever"}

    def test_k_7_requires_override(self, runner, benchmark_files):
        _, _, data_path, _ = benchmark_files
        result = runner.invoke(
            cli, ["evaluate", str(data_path), "--gold-evidence", "--fallback", "--k", "7"]
        )
        assert result.exit_code == 2

    def test_byte_identical_reports(self, runner, benchmark_files, tmp_path):
        root, corpus_path, data_path, _ = benchmark_files
        sparse_path = root / "sparse2.idx"
        runner.invoke(cli, ["index", str(corpus_path), str(sparse_path), "--kind", "sparse"])
        outputs = []
        for name in ("r1.json", "r2.json"):
            report_path = tmp_path / name
            result = runner.invoke(
                cli,
                ["evaluate", str(data_path), "--dataset", "planted",
                 "--index", str(sparse_path), "--corpus", str(corpus_path),
                 "--retriever", "bm25", "--fallback", "--report", str(report_path)],
            )
            assert result.exit_code == 0, result.output
            outputs.append(report_path.read_bytes())
        assert outputs[0] == outputs[1]


def test_serve_info_and_conformance(runner):
    with ReferenceServer() as server:
        result = runner.invoke(cli, ["serve-info", "--endpoint", server.url, "--check"])
        assert result.exit_code == 0, result.output
        assert '"dim": 32' in result.output
        assert "conformance: PASS" in result.output


def test_main_maps_domain_errors_to_exit_1(tmp_path, monkeypatch, capsys):
    missing = tmp_path / "does-not-exist.jsonl"
    missing.write_text('{"claim_id": "1", "text": "x", "label": "bogus"}\n')
    monkeypatch.setattr(
        sys, "argv",
        ["claimlens", "evaluate", str(missing), "--gold-evidence", "--fallback"],
    )
    with pytest.raises(SystemExit) as excinfo:
        main()
    assert excinfo.value.code == 1
    assert "error" in capsys.readouterr().err.lower()


def test_main_maps_usage_errors_to_exit_2(monkeypatch, capsys):
    monkeypatch.setattr(sys, "argv", ["claimlens", "frobnicate"])
    with pytest.raises(SystemExit) as excinfo:
        main()
    assert excinfo.value.code == 2
