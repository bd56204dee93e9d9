"""MediaWiki XML export importer.

Emits one canonical Document per main-namespace, non-redirect page with
wikitext markup reduced to visible plaintext. Full template expansion is
out of scope: templates, ref tags and file links are removed, wiki links
are collapsed to their display text, heading markers are dropped.
"""

from __future__ import annotations

import re
import xml.etree.ElementTree as ET

from ..errors import CorpusParseError
from .records import Corpus, CorpusStats, Document, _coerce_stream

_TEMPLATE_RE = re.compile(r"\{\{[^{}]*\}\}", re.DOTALL)
_REF_BLOCK_RE = re.compile(r"<ref[^>/]*>.*?</ref>", re.DOTALL | re.IGNORECASE)
_REF_SELFCLOSE_RE = re.compile(r"<ref[^>]*/>", re.IGNORECASE)
_COMMENT_RE = re.compile(r"<!--.*?-->", re.DOTALL)
_FILE_LINK_RE = re.compile(r"\[\[(?:File|Image):[^\[\]]*(?:\[\[[^\[\]]*\]\][^\[\]]*)*\]\]", re.IGNORECASE)
_PIPED_LINK_RE = re.compile(r"\[\[[^\[\]|]*\|([^\[\]]*)\]\]")
_PLAIN_LINK_RE = re.compile(r"\[\[([^\[\]]*)\]\]")
_HEADING_RE = re.compile(r"^=+\s*(.*?)\s*=+\s*$", re.MULTILINE)
_EXTERNAL_LINK_RE = re.compile(r"\[https?://\S*\s+([^\]]*)\]")
_BARE_EXTERNAL_RE = re.compile(r"\[https?://[^\]\s]*\]")
_QUOTES_RE = re.compile(r"'{2,}")
_REDIRECT_RE = re.compile(r"^\s*#REDIRECT", re.IGNORECASE)

# Title prefixes of non-main namespaces in English exports; the <ns> element
# is authoritative when present.
_NAMESPACE_PREFIXES = (
    "Talk:", "User:", "User talk:", "Wikipedia:", "Wikipedia talk:",
    "File:", "File talk:", "MediaWiki:", "Template:", "Template talk:",
    "Help:", "Category:", "Category talk:", "Portal:", "Draft:", "Module:",
)


def _apply_to_fixpoint(pattern: re.Pattern, repl: str, text: str) -> str:
    while True:
        new = pattern.sub(repl, text)
        if new == text:
            return new
        text = new


def strip_wikitext(text: str) -> str:
    """Reduce wikitext to visible plaintext per the documented rules."""
    text = _COMMENT_RE.sub("", text)
    # Innermost-first removal handles nested templates without real parsing.
    text = _apply_to_fixpoint(_TEMPLATE_RE, "", text)
    text = _REF_BLOCK_RE.sub("", text)
    text = _REF_SELFCLOSE_RE.sub("", text)
    text = _apply_to_fixpoint(_FILE_LINK_RE, "", text)
    text = _PIPED_LINK_RE.sub(r"\1", text)
    text = _PLAIN_LINK_RE.sub(r"\1", text)
    text = _EXTERNAL_LINK_RE.sub(r"\1", text)
    text = _BARE_EXTERNAL_RE.sub("", text)
    text = _HEADING_RE.sub(r"\1", text)
    text = _QUOTES_RE.sub("", text)
    # Collapse the whitespace the removals leave behind.
    text = re.sub(r"[ \t]+", " ", text)
    text = re.sub(r"\n{2,}", "\n", text)
    return text.strip()


def _localname(tag: str) -> str:
    return tag.rsplit("}", 1)[-1]


def parse_mediawiki_xml(stream) -> Corpus:
    """Parse a MediaWiki XML export into a wikipedia-source corpus.

    Pages outside the main namespace and redirects are skipped; pages whose
    stripped text is empty are dropped and counted.
    """
    stats = CorpusStats()
    documents: list[Document] = []
    try:
        for _, page in _iter_pages(stream):
            stats.raw += 1
            title = page.get("title", "")
            ns = page.get("ns")
            if page.get("redirect") or _REDIRECT_RE.match(page.get("text", "")):
                stats.drop("redirect")
                continue
            if (ns is not None and ns != "0") or (
                ns is None and title.startswith(_NAMESPACE_PREFIXES)
            ):
                stats.drop("non_main_namespace")
                continue
            body = strip_wikitext(page.get("text", ""))
            if not body:
                stats.drop("empty_body")
                continue
            documents.append(
                Document(
                    doc_id=f"enwiki:{title}",
                    title=title,
                    body=body,
                    language="en",
                    source="wikipedia",
                )
            )
    except ET.ParseError as exc:
        line, column = exc.position
        raise CorpusParseError(
            f"malformed MediaWiki XML at line {line}, column {column}: {exc}"
        ) from exc
    stats.kept = len(documents)
    stats.check()
    return Corpus(documents=documents, source="wikipedia", stats=stats)


def _iter_pages(stream):
    """Yield (title, page-dict) per <page>, streaming and namespace-agnostic."""
    page: dict[str, str] | None = None
    for event, elem in ET.iterparse(_coerce_stream(stream), events=("start", "end")):
        name = _localname(elem.tag)
        if event == "start" and name == "page":
            page = {}
        elif event == "end" and page is not None:
            if name == "title":
                page["title"] = elem.text or ""
            elif name == "ns":
                page["ns"] = (elem.text or "").strip()
            elif name == "redirect":
                page["redirect"] = elem.get("title", "") or "1"
            elif name == "text":
                page["text"] = elem.text or ""
            elif name == "page":
                yield page.get("title", ""), page
                page = None
                elem.clear()
