"""Corpus cleanup filters: language, missing abstracts, truncated abstracts.

Rules are independent; a document is kept iff it passes every enabled rule,
so applying the same rule set twice is a no-op and rule order only affects
which rule a drop is attributed to in the stats (first failing rule wins,
in the canonical order below).
"""

from __future__ import annotations

from ..text import tokenize
from .records import Corpus, CorpusStats, Document

RULE_NON_ENGLISH = "non_english"
RULE_NO_ABSTRACT = "no_abstract"
RULE_UNFINISHED = "unfinished_abstract"

ALL_RULES = (RULE_NON_ENGLISH, RULE_NO_ABSTRACT, RULE_UNFINISHED)

# A body is considered complete only if it ends in sentence-final punctuation
# (or a closing quote/bracket right after one, as in `...effect."`).
_TERMINAL_CHARS = frozenset('.!?")]')

# Fixed 50-word English function-word list for the stopword-ratio heuristic.
_EN_STOPWORDS = frozenset(
    """the be to of and a in that have i it for not on with he as you do at
    this but his by from they we say her she or an will my one all would
    there their what so up out if about who get which go me""".split()
)

_EN_STOPWORD_RATIO = 0.03


def is_english(doc: Document) -> bool:
    """Language metadata wins when present; otherwise a stopword-ratio heuristic."""
    if doc.language is not None:
        return doc.language.lower() == "en"
    tokens = tokenize(doc.body or doc.title)
    if not tokens:
        return False
    hits = sum(1 for t in tokens if t in _EN_STOPWORDS)
    return hits / len(tokens) >= _EN_STOPWORD_RATIO


def has_abstract(doc: Document) -> bool:
    return bool(doc.body.strip())


def is_finished(doc: Document) -> bool:
    stripped = doc.body.rstrip()
    if not stripped:
        return False
    return stripped[-1] in _TERMINAL_CHARS


_RULE_PREDICATES = {
    RULE_NON_ENGLISH: is_english,
    RULE_NO_ABSTRACT: has_abstract,
    RULE_UNFINISHED: is_finished,
}


def apply_filters(corpus: Corpus, rules=ALL_RULES) -> Corpus:
    """Drop documents failing any enabled rule; record per-rule drop counts."""
    unknown = set(rules) - set(ALL_RULES)
    if unknown:
        raise ValueError(f"unknown filter rules: {sorted(unknown)}")
    ordered = [r for r in ALL_RULES if r in set(rules)]
    stats = CorpusStats(raw=len(corpus.documents))
    kept: list[Document] = []
    for doc in corpus.documents:
        failed = next((r for r in ordered if not _RULE_PREDICATES[r](doc)), None)
        if failed is None:
            kept.append(doc)
        else:
            stats.drop(failed)
    stats.kept = len(kept)
    stats.check()
    return Corpus(documents=kept, source=corpus.source, stats=stats)
