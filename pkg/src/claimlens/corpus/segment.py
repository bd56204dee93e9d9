"""Deterministic, abbreviation-aware sentence segmentation.

A boundary is a `.`, `!` or `?` followed by whitespace and an uppercase
letter or digit, unless the period terminates a known abbreviation or sits
inside a decimal number. Good enough for abstracts, and fully reproducible.
"""

from __future__ import annotations

import re

from .records import Document, Sentence

_BOUNDARY_RE = re.compile(r"[.!?]+(?=\s+[A-Z0-9])")

# Lowercased final tokens (including the period) that never end a sentence.
_ABBREVIATIONS = frozenset(
    [
        "e.g.", "i.e.", "etc.", "cf.", "ca.", "vs.", "al.",
        "fig.", "figs.", "eq.", "eqs.", "ref.", "refs.", "no.", "nos.",
        "dr.", "mr.", "mrs.", "ms.", "prof.", "st.",
        "vol.", "pp.", "approx.", "resp.",
    ]
)


def _last_token(text: str, end: int) -> str:
    """The non-whitespace run ending at position end (inclusive of punctuation)."""
    start = end
    while start > 0 and not text[start - 1].isspace():
        start -= 1
    return text[start:end]


def _is_boundary(text: str, match: re.Match) -> bool:
    # Periods inside decimal numbers ("0.5 mg") have a digit, not whitespace,
    # after them and therefore never reach this check.
    if text[match.start()] == ".":
        token = _last_token(text, match.end()).lower().lstrip("([{'\"")
        if token in _ABBREVIATIONS:
            return False
    return True


def split_sentences(text: str) -> list[str]:
    """Split text into non-empty sentence strings, whitespace-trimmed."""
    pieces: list[str] = []
    start = 0
    for match in _BOUNDARY_RE.finditer(text):
        if not _is_boundary(text, match):
            continue
        pieces.append(text[start : match.end()])
        start = match.end()
    pieces.append(text[start:])
    return [p.strip() for p in pieces if p.strip()]


def segment_sentences(doc: Document) -> list[Sentence]:
    """Order-preserving sentences of a document body; empty body yields []."""
    return [
        Sentence(doc_id=doc.doc_id, index=i, text=s)
        for i, s in enumerate(split_sentences(doc.body))
    ]
