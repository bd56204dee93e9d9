"""Word tokenization shared by the sparse index, filters, and fallback scorers."""

from __future__ import annotations

import re

# Maximal runs of Unicode letters/digits. \w minus underscore keeps "1g" and
# "tmem27" whole while splitting "vitamin-C" into two tokens.
_TOKEN_RE = re.compile(r"[^\W_]+", re.UNICODE)


def tokenize(text: str) -> list[str]:
    """Lowercased letter/digit runs; no stemming, no stopword removal.

    Exact identifiers matter for retrieval precision (TMEM27 must not
    collide with TMEM2), so tokens are kept verbatim apart from casing.
    """
    return _TOKEN_RE.findall(text.lower())
