"""Corpus ingestion: dump parsers, cleanup filters, sentence segmentation."""

from .filters import ALL_RULES, apply_filters
from .mediawiki import parse_mediawiki_xml, strip_wikitext
from .medline import parse_medline_xml
from .records import (
    Corpus,
    CorpusStats,
    Document,
    Sentence,
    dumps_jsonl,
    parse_jsonl,
    write_jsonl,
)
from .segment import segment_sentences, split_sentences

__all__ = [
    "ALL_RULES",
    "Corpus",
    "CorpusStats",
    "Document",
    "Sentence",
    "apply_filters",
    "dumps_jsonl",
    "parse_jsonl",
    "parse_mediawiki_xml",
    "parse_medline_xml",
    "segment_sentences",
    "split_sentences",
    "strip_wikitext",
    "write_jsonl",
]
