"""Datasets, metrics, and the end-to-end evaluation harness."""

from .datasets import (
    ADAPTERS,
    DATASETS,
    ClaimRecord,
    adapt_covert,
    adapt_healthfc,
    adapt_pubmedqa,
    adapt_scifact,
    load_dataset,
    write_dataset,
)
from .harness import (
    EvalReport,
    EvalRow,
    EvalSource,
    run_gold_evidence_eval,
    run_open_domain_eval,
    run_sweep,
)
from .metrics import Confusion, Metrics, compute_metrics
from .planted import PlantedBenchmark, generate_planted_benchmark

__all__ = [
    "ADAPTERS",
    "DATASETS",
    "ClaimRecord",
    "Confusion",
    "EvalReport",
    "EvalRow",
    "EvalSource",
    "Metrics",
    "PlantedBenchmark",
    "adapt_covert",
    "adapt_healthfc",
    "adapt_pubmedqa",
    "adapt_scifact",
    "compute_metrics",
    "generate_planted_benchmark",
    "load_dataset",
    "run_gold_evidence_eval",
    "run_open_domain_eval",
    "run_sweep",
    "write_dataset",
]
