"""MEDLINE citation XML importer.

One Document per citation: body is the space-joined AbstractText sections
in document order, language comes from the Language element (ISO-639-2
codes mapped to 639-1 so the non-English filter can match on "en").
"""

from __future__ import annotations

import xml.etree.ElementTree as ET

from ..errors import CorpusParseError
from .records import Corpus, CorpusStats, Document, _coerce_stream

# MEDLINE uses ISO-639-2/B codes; map the frequent ones to 639-1.
_LANG_639_2_TO_1 = {
    "eng": "en", "ger": "de", "deu": "de", "fre": "fr", "fra": "fr",
    "spa": "es", "ita": "it", "rus": "ru", "jpn": "ja", "chi": "zh",
    "zho": "zh", "por": "pt", "dut": "nl", "nld": "nl", "pol": "pl",
    "swe": "sv", "dan": "da", "nor": "no", "fin": "fi", "hun": "hu",
    "cze": "cs", "ces": "cs", "tur": "tr", "kor": "ko", "ara": "ar",
    "heb": "he", "gre": "el", "ell": "el", "ukr": "uk", "rum": "ro",
    "ron": "ro",
}


def _normalize_language(code: str | None) -> str | None:
    if not code:
        return None
    code = code.strip().lower()
    if len(code) == 2:
        return code
    return _LANG_639_2_TO_1.get(code, code)


def _element_text(elem: ET.Element | None) -> str:
    if elem is None:
        return ""
    return "".join(elem.itertext()).strip()


def parse_medline_xml(stream) -> Corpus:
    """Parse MEDLINE citation XML into a pubmed-source corpus.

    Citations without a PMID are skipped and counted. A citation with no
    Abstract element yields an empty body; the no-abstract filter removes
    those later.
    """
    stats = CorpusStats()
    documents: list[Document] = []
    seen: set[str] = set()
    try:
        for citation in _iter_citations(stream):
            stats.raw += 1
            pmid = _element_text(citation.find(".//PMID"))
            if not pmid:
                stats.drop("missing_pmid")
                continue
            if pmid in seen:
                # Baseline updates repeat citations; keep the first occurrence.
                stats.drop("duplicate_pmid")
                continue
            seen.add(pmid)
            title = _element_text(citation.find(".//ArticleTitle"))
            sections = [
                _element_text(sec)
                for sec in citation.findall(".//Abstract/AbstractText")
            ]
            body = " ".join(s for s in sections if s)
            language = _normalize_language(_element_text(citation.find(".//Language")))
            documents.append(
                Document(
                    doc_id=f"pmid:{pmid}",
                    title=title,
                    body=body,
                    language=language,
                    source="pubmed",
                )
            )
    except ET.ParseError as exc:
        line, column = exc.position
        raise CorpusParseError(
            f"malformed MEDLINE XML at line {line}, column {column}: {exc}"
        ) from exc
    stats.kept = len(documents)
    stats.check()
    return Corpus(documents=documents, source="pubmed", stats=stats)


def _iter_citations(stream):
    # MedlineCitation appears both standalone (MedlineCitationSet) and inside
    # PubmedArticle (PubmedArticleSet), so it is the one tag worth yielding.
    for _, elem in ET.iterparse(_coerce_stream(stream), events=("end",)):
        if elem.tag == "MedlineCitation":
            yield elem
            elem.clear()
