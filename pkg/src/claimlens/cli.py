"""Command-line entry point wiring corpora, indexes, pipeline, and evaluation.

Configuration precedence is flags > config file > defaults, and the
effective configuration is echoed into every report for provenance.
Exit codes: 0 success, 1 domain failure, 2 usage error.
"""

from __future__ import annotations

import json
import sys
from dataclasses import dataclass
from pathlib import Path

import click

from .core import Claim
from .corpus import (
    ALL_RULES,
    Corpus,
    apply_filters,
    parse_jsonl,
    parse_mediawiki_xml,
    parse_medline_xml,
    write_jsonl,
)
from .dense import (
    build_dense_index,
    load_dense_index,
    retrieve_dense_text,
    save_dense_index,
)
from .errors import ClaimLensError, EmptyEvidenceError
from .evaluation import (
    EvalSource,
    load_dataset,
    run_gold_evidence_eval,
    run_sweep,
)
from .evidence import select_evidence
from .gateway import DEFAULT_DIM, fetch_info, resolve_scorers, run_conformance
from .sparse import (
    DEFAULT_B,
    DEFAULT_K1,
    build_sparse_index,
    load_sparse_index,
    retrieve_sparse,
    save_sparse_index,
)
from .verdict import Verdict, predict_concat, predict_majority, verify_from_snippets

ALLOWED_KJ = (1, 3, 5, 10, 20)

GATEWAY_ENV_VAR = "CLAIMLENS_GATEWAY"


@dataclass
class PipelineConfig:
    """Effective pipeline settings after merging flags, file, and defaults."""

    retriever: str = "bm25"
    k: int = 10
    j: int = 10
    verdict_mode: str = "concat"
    gateway: str = "fallback"
    bm25_k1: float = DEFAULT_K1
    bm25_b: float = DEFAULT_B
    dense_window: int = 256
    dense_dim: int = DEFAULT_DIM

    def to_dict(self) -> dict:
        return {
            "retriever": self.retriever,
            "k": self.k,
            "j": self.j,
            "verdict_mode": self.verdict_mode,
            "gateway": self.gateway,
            "bm25": {"k1": self.bm25_k1, "b": self.bm25_b},
            "dense": {"window": self.dense_window, "dim": self.dense_dim},
        }


_CONFIG_KEYS = {
    "retriever": "retriever",
    "k": "k",
    "j": "j",
    "verdict_mode": "verdict_mode",
    "gateway": "gateway",
}


def build_config(config_file: str | None, **flags) -> PipelineConfig:
    """flags > config file > defaults; only explicitly set flags override."""
    cfg = PipelineConfig()
    if config_file:
        with open(config_file, encoding="utf-8") as fp:
            data = json.load(fp)
        for key, attr in _CONFIG_KEYS.items():
            if key in data:
                setattr(cfg, attr, data[key])
        if "bm25" in data:
            cfg.bm25_k1 = float(data["bm25"].get("k1", cfg.bm25_k1))
            cfg.bm25_b = float(data["bm25"].get("b", cfg.bm25_b))
        if "dense" in data:
            cfg.dense_window = int(data["dense"].get("window", cfg.dense_window))
            cfg.dense_dim = int(data["dense"].get("dim", cfg.dense_dim))
    for key, value in flags.items():
        if value is not None:
            setattr(cfg, key, value)
    return cfg


def _validate_kj(values, allow_any: bool) -> None:
    if allow_any:
        return
    bad = [v for v in values if v not in ALLOWED_KJ]
    if bad:
        raise click.UsageError(
            f"k/j values {bad} outside {list(ALLOWED_KJ)}; pass --allow-any-k to override"
        )


def _load_corpus_file(path) -> Corpus:
    with open(path, "rb") as fp:
        return parse_jsonl(fp)


@click.group()
def cli():
    """Open-domain scientific claim verification."""


@cli.command()
@click.argument("input_file", type=click.Path(exists=True, dir_okay=False))
@click.argument("output_file", type=click.Path(dir_okay=False, writable=True))
@click.option("--format", "fmt", type=click.Choice(["jsonl", "medline-xml", "mediawiki-xml"]),
              default="jsonl", show_default=True, help="Input dump format.")
@click.option("--filters", default="", help=f"Comma-separated rules from {ALL_RULES}.")
@click.option("--strict", is_flag=True, help="Abort on the first malformed record.")
@click.option("--stats-out", type=click.Path(dir_okay=False), default=None,
              help="Stats JSON path (default: OUTPUT_FILE + '.stats.json').")
def ingest(input_file, output_file, fmt, filters, strict, stats_out):
    """Parse a raw dump into canonical JSONL and write ingest stats."""
    with open(input_file, "rb") as fp:
        if fmt == "jsonl":
            corpus = parse_jsonl(fp, strict=strict)
        elif fmt == "medline-xml":
            corpus = parse_medline_xml(fp)
        else:
            corpus = parse_mediawiki_xml(fp)
    parse_stats = corpus.stats.to_dict()

    rules = [r.strip() for r in filters.split(",") if r.strip()]
    unknown = set(rules) - set(ALL_RULES)
    if unknown:
        raise click.UsageError(f"unknown filter rules: {sorted(unknown)}")
    filter_stats = None
    if rules:
        corpus = apply_filters(corpus, rules)
        filter_stats = corpus.stats.to_dict()

    with open(output_file, "w", encoding="utf-8") as fp:
        write_jsonl(corpus, fp)
    stats_path = stats_out or output_file + ".stats.json"
    stats = {"parse": parse_stats}
    if filter_stats is not None:
        stats["filters"] = filter_stats
    with open(stats_path, "w", encoding="utf-8") as fp:
        json.dump(stats, fp, indent=2, sort_keys=True)
        fp.write("\n")
    if len(corpus) == 0:
        click.echo("warning: corpus is empty after ingest", err=True)
    click.echo(f"wrote {len(corpus)} documents to {output_file}")


@cli.command()
@click.argument("corpus_file", type=click.Path(exists=True, dir_okay=False))
@click.argument("output_file", type=click.Path(dir_okay=False, writable=True))
@click.option("--kind", type=click.Choice(["sparse", "dense"]), required=True)
@click.option("--gateway", default=None, envvar=GATEWAY_ENV_VAR,
              help="Model-gateway URL for dense embeddings.")
@click.option("--fallback", is_flag=True, help="Use the offline hash embedder.")
@click.option("--dim", type=int, default=None, help="Fallback embedder dimension.")
@click.option("--batch-size", type=int, default=64, show_default=True)
@click.option("--window", type=int, default=None, help="Body token window for embedding.")
@click.option("--checkpoint", type=click.Path(dir_okay=False), default=None,
              help="Where to keep partial progress if embedding fails.")
def index(corpus_file, output_file, kind, gateway, fallback, dim, batch_size, window, checkpoint):
    """Build and persist a sparse or dense index over a canonical corpus."""
    corpus = _load_corpus_file(corpus_file)
    if kind == "sparse":
        idx = build_sparse_index(corpus)
        save_sparse_index(idx, output_file)
        click.echo(f"sparse index: {idx.n_docs} documents, {len(idx.postings)} terms")
        return
    if not fallback and not gateway:
        raise click.UsageError("dense indexing needs --gateway URL or --fallback")
    cfg = build_config(None, gateway=(None if fallback else gateway),
                       dense_dim=dim, dense_window=window)
    scorers = resolve_scorers(None if fallback else cfg.gateway, dim=cfg.dense_dim)
    idx = build_dense_index(
        corpus,
        scorers.embedder,
        batch_size=batch_size,
        window=cfg.dense_window,
        checkpoint_path=checkpoint,
    )
    save_dense_index(idx, output_file)
    click.echo(f"dense index: {len(idx)} documents, dim {idx.dim}, embedder {idx.embedder_id}")


@cli.command()
@click.option("--claim", required=True, help="Claim text to verify.")
@click.option("--claim-id", default="cli-claim", show_default=True)
@click.option("--index", "index_file", type=click.Path(exists=True, dir_okay=False), default=None)
@click.option("--corpus", "corpus_file", type=click.Path(exists=True, dir_okay=False), default=None)
@click.option("--kind", type=click.Choice(["sparse", "dense"]), default=None)
@click.option("--snippets", type=click.Path(exists=True, dir_okay=False), default=None,
              help="JSON snippet file: bypass retrieval and verify from snippets.")
@click.option("--config", "config_file", type=click.Path(exists=True, dir_okay=False), default=None)
@click.option("--k", type=int, default=None)
@click.option("--j", type=int, default=None)
@click.option("--allow-any-k", is_flag=True)
@click.option("--gateway", default=None, envvar=GATEWAY_ENV_VAR)
@click.option("--fallback", is_flag=True, help="Force the offline fallback scorers.")
@click.option("--mode", type=click.Choice(["concat", "majority"]), default=None)
@click.option("--empty-evidence", type=click.Choice(["error", "refuted", "supported"]),
              default="error", show_default=True,
              help="Policy when retrieval yields no usable evidence.")
def verify(claim, claim_id, index_file, corpus_file, kind, snippets, config_file,
           k, j, allow_any_k, gateway, fallback, mode, empty_evidence):
    """Verify a single claim; prints the verdict and the evidence set as JSON."""
    cfg = build_config(config_file, k=k, j=j, verdict_mode=mode,
                       gateway=(None if fallback else gateway))
    _validate_kj([cfg.k, cfg.j], allow_any_k)
    claim_obj = Claim(claim_id=claim_id, text=claim)
    scorers = resolve_scorers(None if fallback else cfg.gateway, dim=cfg.dense_dim)

    if snippets:
        with open(snippets, encoding="utf-8") as fp:
            data = json.load(fp)
        texts = data["snippets"] if isinstance(data, dict) else data
        verdict_obj = verify_from_snippets(claim_obj, [str(s) for s in texts], scorers.nli)
        click.echo(json.dumps({"verdict": verdict_obj.to_dict()}, indent=2, sort_keys=True))
        return

    if not index_file or not corpus_file or not kind:
        raise click.UsageError("verification needs --index, --corpus and --kind (or --snippets)")
    corpus = _load_corpus_file(corpus_file)
    documents = corpus.by_id()
    if kind == "sparse":
        idx = load_sparse_index(index_file)
        hits = retrieve_sparse(idx, claim_obj, k=cfg.k, k1=cfg.bm25_k1, b=cfg.bm25_b)
    else:
        idx = load_dense_index(index_file)
        hits = retrieve_dense_text(idx, scorers.embedder, claim_obj, k=cfg.k)
    retrieved = [(hit, documents[hit.doc_id]) for hit in hits]
    evidence = select_evidence(claim_obj, retrieved, scorers.sentence_scorer, j=cfg.j) if retrieved else None

    try:
        if evidence is None or len(evidence) == 0:
            raise EmptyEvidenceError(f"no evidence for claim {claim_id!r}")
        if cfg.verdict_mode == "majority":
            verdict_obj = predict_majority(claim_obj, evidence.by_doc(), scorers.nli)
        else:
            verdict_obj = predict_concat(claim_obj, evidence, scorers.nli)
    except EmptyEvidenceError:
        if empty_evidence == "error":
            click.echo(json.dumps({"error": "NO_EVIDENCE", "claim_id": claim_id}, sort_keys=True))
            sys.exit(1)
        verdict_obj = Verdict(
            claim_id=claim_id,
            label=empty_evidence.upper(),
            mode=cfg.verdict_mode,
            entail_mass=0.0,
            contradict_mass=0.0,
        )
    payload = {
        "verdict": verdict_obj.to_dict(),
        "evidence": evidence.to_dict() if evidence is not None else None,
        "retrieved": [{"doc_id": h.doc_id, "score": h.score, "rank": h.rank} for h, _ in retrieved],
        "config": cfg.to_dict(),
    }
    click.echo(json.dumps(payload, indent=2, sort_keys=True))


@cli.command()
@click.argument("data_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--dataset", default="custom", show_default=True, help="Dataset name for the report.")
@click.option("--gold-evidence", is_flag=True, help="Closed-domain baseline over gold evidence.")
@click.option("--index", "index_file", type=click.Path(exists=True, dir_okay=False), default=None)
@click.option("--corpus", "corpus_file", type=click.Path(exists=True, dir_okay=False), default=None)
@click.option("--retriever", type=click.Choice(["bm25", "dense"]), default=None)
@click.option("--config", "config_file", type=click.Path(exists=True, dir_okay=False), default=None)
@click.option("--k", "ks", type=int, multiple=True, help="Repeatable; defaults to config k.")
@click.option("--j", "js", type=int, multiple=True, help="Repeatable; defaults to config j.")
@click.option("--allow-any-k", is_flag=True)
@click.option("--gateway", default=None, envvar=GATEWAY_ENV_VAR)
@click.option("--fallback", is_flag=True)
@click.option("--mode", type=click.Choice(["concat", "majority"]), default=None)
@click.option("--report", "report_file", type=click.Path(dir_okay=False), default=None)
@click.option("--artifacts", type=click.Path(file_okay=False), default=None,
              help="Directory for per-claim JSON artifacts.")
def evaluate(data_file, dataset, gold_evidence, index_file, corpus_file, retriever,
             config_file, ks, js, allow_any_k, gateway, fallback, mode, report_file, artifacts):
    """Evaluate over a canonical dataset file; prints a metrics table."""
    cfg = build_config(config_file, retriever=retriever, verdict_mode=mode,
                       gateway=(None if fallback else gateway))
    ks = list(ks) or [cfg.k]
    js = list(js) or [cfg.j]
    _validate_kj(ks + js, allow_any_k)
    records = load_dataset(dataset, data_file)
    if not records:
        raise ClaimLensError(f"dataset {data_file} has no binary-labeled records")
    scorers = resolve_scorers(None if fallback else cfg.gateway, dim=cfg.dense_dim)

    if gold_evidence:
        report = run_gold_evidence_eval(records, scorers.nli)
        report.config = {"mode": "gold-evidence", **cfg.to_dict()}
    else:
        if not index_file or not corpus_file:
            raise click.UsageError("open-domain evaluation needs --index and --corpus")
        corpus = _load_corpus_file(corpus_file)
        source = EvalSource(name=corpus.source, documents=corpus.by_id())
        if cfg.retriever == "bm25":
            source.sparse = load_sparse_index(index_file)
        else:
            source.dense = load_dense_index(index_file)
        report = run_sweep(
            records, source, cfg.retriever, ks, js,
            sentence_scorer=scorers.sentence_scorer,
            nli=scorers.nli,
            embedder=scorers.embedder,
            verdict_mode=cfg.verdict_mode,
            artifact_dir=artifacts,
            config=cfg.to_dict(),
        )
    click.echo(report.format_table())
    if report_file:
        Path(report_file).write_text(report.to_json(), encoding="utf-8")
        click.echo(f"report written to {report_file}")


@cli.command("serve-info")
@click.option("--endpoint", required=True, envvar=GATEWAY_ENV_VAR, help="Gateway base URL.")
@click.option("--check", is_flag=True, help="Run the full protocol conformance suite.")
def serve_info(endpoint, check):
    """Query a model gateway's /v1/info; optionally run conformance checks."""
    info = fetch_info(endpoint)
    click.echo(json.dumps(info, indent=2, sort_keys=True))
    if check:
        report = run_conformance(endpoint)
        click.echo(report.format())
        if not report.passed:
            sys.exit(1)


def main():
    try:
        cli(standalone_mode=False)
    except click.exceptions.Exit as exc:
        sys.exit(exc.exit_code)
    except click.UsageError as exc:
        click.echo(f"usage error: {exc.format_message()}", err=True)
        sys.exit(2)
    except click.ClickException as exc:
        exc.show()
        sys.exit(1)
    except click.exceptions.Abort:
        sys.exit(130)
    except ClaimLensError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(1)


if __name__ == "__main__":
    main()
