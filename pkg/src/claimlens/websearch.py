"""Web-search snippet clients for the whole-web verification path.

Snippets are short result texts that get concatenated into the evidence
block. The fixture client serves snippets from a JSON file so tests and
offline runs never touch the network; the live Custom Search adapter is
optional and activates only when credentials are present in the
environment (CLAIMLENS_SEARCH_API_KEY, CLAIMLENS_SEARCH_ENGINE_ID).
"""

from __future__ import annotations

import json
import os

import requests

from .errors import ClaimLensError

SEARCH_API_KEY_VAR = "CLAIMLENS_SEARCH_API_KEY"
SEARCH_ENGINE_ID_VAR = "CLAIMLENS_SEARCH_ENGINE_ID"

_CUSTOM_SEARCH_URL = "https://www.googleapis.com/customsearch/v1"


class FixtureSearchClient:
    """Serves snippets from a JSON fixture.

    Accepted shapes: a list of snippet strings (returned for any query), or
    an object mapping query text to a list of snippets.
    """

    def __init__(self, path_or_data):
        if isinstance(path_or_data, (list, dict)):
            self._data = path_or_data
        else:
            with open(path_or_data, encoding="utf-8") as fp:
                self._data = json.load(fp)
        if isinstance(self._data, dict) and "snippets" in self._data:
            self._data = self._data["snippets"]

    def search(self, query: str, n: int = 10) -> list[str]:
        if isinstance(self._data, dict):
            snippets = self._data.get(query, [])
        else:
            snippets = self._data
        return [str(s) for s in snippets[:n]]


class CustomSearchClient:
    """Live Custom Search JSON API adapter; requires env credentials.

    Networked and billed per query: never used in tests, only when the
    operator opts in explicitly.
    """

    def __init__(self, api_key: str | None = None, engine_id: str | None = None, session=None):
        self.api_key = api_key or os.environ.get(SEARCH_API_KEY_VAR)
        self.engine_id = engine_id or os.environ.get(SEARCH_ENGINE_ID_VAR)
        if not self.api_key or not self.engine_id:
            raise ClaimLensError(
                f"web search needs {SEARCH_API_KEY_VAR} and {SEARCH_ENGINE_ID_VAR} set"
            )
        self._session = session or requests.Session()

    def search(self, query: str, n: int = 10) -> list[str]:
        resp = self._session.get(
            _CUSTOM_SEARCH_URL,
            params={"key": self.api_key, "cx": self.engine_id, "q": query, "num": min(n, 10)},
            timeout=30,
        )
        if resp.status_code != 200:
            raise ClaimLensError(f"search API answered {resp.status_code}: {resp.text[:200]}")
        items = resp.json().get("items", [])
        return [str(item.get("snippet", "")) for item in items if item.get("snippet")][:n]
