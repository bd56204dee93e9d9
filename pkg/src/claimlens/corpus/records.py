"""Canonical document records and the JSONL ingest/serialize pair.

JSONL of Document records is the storage format every other stage reads;
the XML importers in this subpackage emit the same structure.
"""

from __future__ import annotations

import io
import json
from dataclasses import dataclass, field

from ..errors import CorpusParseError, DuplicateDocIdError

SOURCES = ("pubmed", "wikipedia", "other")


@dataclass(frozen=True)
class Document:
    """One retrievable unit: an abstract or an article."""

    doc_id: str
    title: str
    body: str
    language: str | None = None
    source: str = "other"

    def __post_init__(self):
        if not self.doc_id:
            raise ValueError("doc_id must be non-empty")
        if self.source not in SOURCES:
            raise ValueError(f"unknown source {self.source!r}")

    def to_record(self) -> dict:
        rec = {"doc_id": self.doc_id, "title": self.title, "body": self.body}
        if self.language is not None:
            rec["language"] = self.language
        if self.source != "other":
            rec["source"] = self.source
        return rec


@dataclass(frozen=True)
class Sentence:
    """A sentence of a document, addressed by 0-based position."""

    doc_id: str
    index: int
    text: str


@dataclass
class CorpusStats:
    raw: int = 0
    kept: int = 0
    dropped: dict[str, int] = field(default_factory=dict)

    def drop(self, rule: str, n: int = 1) -> None:
        self.dropped[rule] = self.dropped.get(rule, 0) + n

    def to_dict(self) -> dict:
        return {"raw": self.raw, "kept": self.kept, "dropped": dict(self.dropped)}

    def check(self) -> None:
        if self.raw != self.kept + sum(self.dropped.values()):
            raise ValueError(
                f"inconsistent stats: raw={self.raw} kept={self.kept} dropped={self.dropped}"
            )


@dataclass
class Corpus:
    """An ordered, immutable-once-built collection of documents."""

    documents: list[Document]
    source: str = "other"
    stats: CorpusStats = field(default_factory=CorpusStats)

    def __len__(self) -> int:
        return len(self.documents)

    def __iter__(self):
        return iter(self.documents)

    def by_id(self) -> dict[str, Document]:
        return {d.doc_id: d for d in self.documents}


def _coerce_stream(stream) -> io.IOBase:
    if isinstance(stream, bytes):
        return io.BytesIO(stream)
    return stream


def parse_jsonl(stream, source: str = "other", strict: bool = False) -> Corpus:
    """Parse one JSON document record per line.

    Required keys: doc_id, title, body; optional: language, source.
    Malformed lines are counted and skipped, or abort with the line number
    when strict=True. Duplicate doc_ids are an error in both modes.
    """
    stats = CorpusStats()
    documents: list[Document] = []
    seen: set[str] = set()
    for lineno, raw in enumerate(_coerce_stream(stream), start=1):
        if isinstance(raw, bytes):
            raw = raw.decode("utf-8")
        line = raw.strip()
        if not line:
            continue
        stats.raw += 1
        try:
            rec = json.loads(line)
            doc = Document(
                doc_id=str(rec["doc_id"]),
                title=str(rec.get("title", "")),
                body=str(rec.get("body", "")),
                language=rec.get("language"),
                source=rec.get("source", source),
            )
        except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
            if strict:
                raise CorpusParseError(f"line {lineno}: {exc}") from exc
            stats.drop("malformed")
            continue
        if doc.doc_id in seen:
            raise DuplicateDocIdError(f"line {lineno}: duplicate doc_id {doc.doc_id!r}")
        seen.add(doc.doc_id)
        documents.append(doc)
    stats.kept = len(documents)
    stats.check()
    return Corpus(documents=documents, source=source, stats=stats)


def write_jsonl(corpus: Corpus, fp) -> None:
    """Serialize a corpus back to canonical JSONL (UTF-8, one object per line)."""
    for doc in corpus.documents:
        fp.write(json.dumps(doc.to_record(), ensure_ascii=False) + "\n")


def dumps_jsonl(corpus: Corpus) -> str:
    buf = io.StringIO()
    write_jsonl(corpus, buf)
    return buf.getvalue()
