import pytest

from claimlens.core import Claim
from claimlens.corpus import Corpus, CorpusStats, Document
from claimlens.gateway import HashEmbedder, HeuristicNli, LexicalScorer


def make_corpus(pairs, source="other"):
    """pairs: list of (doc_id, body) or (doc_id, title, body)."""
    docs = []
    for pair in pairs:
        if len(pair) == 2:
            doc_id, body = pair
            title = ""
        else:
            doc_id, title, body = pair
        docs.append(Document(doc_id=doc_id, title=title, body=body))
    stats = CorpusStats(raw=len(docs), kept=len(docs))
    return Corpus(documents=docs, source=source, stats=stats)


@pytest.fixture
def tiny_corpus():
    return make_corpus([("d1", "a b"), ("d2", "b b")])


@pytest.fixture
def claim():
    def _claim(text, claim_id="c1"):
        return Claim(claim_id=claim_id, text=text)

    return _claim


@pytest.fixture
def hash_embedder():
    return HashEmbedder(dim=64)


@pytest.fixture
def lexical_scorer():
    return LexicalScorer()


@pytest.fixture
def heuristic_nli():
    return HeuristicNli()
