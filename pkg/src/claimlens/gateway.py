"""Uniform interface to the neural scorers, with deterministic offline fallbacks.

Three roles sit behind one HTTP+JSON protocol: an embedder (dense retrieval),
a sentence-similarity scorer (evidence selection) and an NLI predictor
(verdicts). Remote clients talk to any server implementing the protocol;
the fallback implementations are pure functions of their inputs so the whole
pipeline runs and tests offline, bit-identically across platforms.

Wire protocol (all bodies UTF-8 JSON, non-2xx responses carry {"error": ...}):

    POST /v1/embed       {"texts": [...]}      -> {"dim": D, "vectors": [[...], ...]}
    POST /v1/similarity  {"claim": ..., "sentences": [...]} -> {"scores": [...]}
    POST /v1/nli         {"pairs": [{"premise": ..., "hypothesis": ...}]}
                         -> {"labels": [{"entailment": p, "neutral": q, "contradiction": r}]}
    GET  /v1/info        -> {"embedder_id": ..., "dim": D, "models": {...}}
"""

from __future__ import annotations

import hashlib
import os
import re
import time
from dataclasses import dataclass, field

import numpy as np
import requests

from .errors import GatewayProtocolError, GatewayUnavailableError
from .text import tokenize

FALLBACK_EMBEDDER_ID = "fallback-hash-v1"
DEFAULT_DIM = 256

# Optional static bearer token; sent when set, required only if the server
# was started with one.
GATEWAY_TOKEN_VAR = "CLAIMLENS_GATEWAY_TOKEN"

RETRY_ATTEMPTS = 3
RETRY_BACKOFF = 0.5

# Cues whose presence flips the heuristic NLI toward contradiction. The XOR
# of cue presence in premise and hypothesis approximates polarity mismatch.
NEGATION_CUES = ("no", "not", "never", "cannot", "fails", "lacks")
NEGATION_PHRASES = ("no evidence",)

_WORD_RE = re.compile(r"[^\W_]+", re.UNICODE)


# ---------------------------------------------------------------------------
# fallback implementations


class HashEmbedder:
    """Deterministic bag-of-tokens embedder: each token is hashed into one of
    `dim` buckets with a sign from a second hash, then the sum is normalized.

    Token-less input maps to the reserved all-zero vector; index builders must
    treat that as an error because it cannot be normalized.
    """

    kind = "fallback_hash"

    def __init__(self, dim: int = DEFAULT_DIM):
        if dim <= 0:
            raise ValueError("dim must be positive")
        self.dim = dim
        self.id = FALLBACK_EMBEDDER_ID
        self.endpoint = None

    def _token_slot(self, token: str) -> tuple[int, float]:
        data = token.encode("utf-8")
        bucket = int.from_bytes(
            hashlib.blake2b(data, digest_size=8, person=b"cl-slot").digest(), "big"
        )
        sign = int.from_bytes(
            hashlib.blake2b(data, digest_size=8, person=b"cl-sign").digest(), "big"
        )
        return bucket % self.dim, 1.0 if sign % 2 == 0 else -1.0

    def embed(self, texts: list[str]) -> np.ndarray:
        if not isinstance(texts, (list, tuple)) or len(texts) == 0:
            raise ValueError("texts must be a non-empty list")
        out = np.zeros((len(texts), self.dim), dtype=np.float32)
        for row, text in enumerate(texts):
            for token in tokenize(text):
                slot, sign = self._token_slot(token)
                out[row, slot] += sign
            norm = float(np.linalg.norm(out[row]))
            if norm > 0.0:
                out[row] /= norm
        return out


class LexicalScorer:
    """Jaccard similarity of token sets: bounded to [0, 1], order-invariant."""

    kind = "fallback_lexical"
    endpoint = None

    def score_sentences(self, claim: str, sentences: list[str]) -> list[float]:
        if not sentences:
            raise ValueError("sentences must be non-empty")
        claim_tokens = set(tokenize(claim))
        return [_jaccard(claim_tokens, set(tokenize(s))) for s in sentences]


class HeuristicNli:
    """Token-overlap NLI stand-in, for plumbing tests only.

    With overlap o and polarity flag g (XOR of negation-cue presence):
    entail = o*(1-g), contradict = o*g, neutral = 1-o, then normalized.
    Directionally correct, never used where real entailment quality matters.
    """

    kind = "fallback_heuristic"
    endpoint = None

    def nli(self, premise: str, hypothesis: str) -> tuple[float, float, float]:
        if not premise or not hypothesis:
            raise ValueError("premise and hypothesis must be non-empty")
        overlap = _jaccard(set(tokenize(premise)), set(tokenize(hypothesis)))
        flipped = _has_negation(premise) != _has_negation(hypothesis)
        entail = overlap * (0.0 if flipped else 1.0)
        contradict = overlap * (1.0 if flipped else 0.0)
        neutral = 1.0 - overlap
        return _normalize_triple(entail, neutral, contradict)

    def nli_batch(self, pairs: list[tuple[str, str]]) -> list[tuple[float, float, float]]:
        return [self.nli(p, h) for p, h in pairs]


def _jaccard(a: set[str], b: set[str]) -> float:
    union = a | b
    if not union:
        return 0.0
    return len(a & b) / len(union)


def _has_negation(text: str) -> bool:
    lowered = text.lower()
    if any(phrase in lowered for phrase in NEGATION_PHRASES):
        return True
    words = set(_WORD_RE.findall(lowered))
    return any(cue in words for cue in NEGATION_CUES)


def _normalize_triple(entail: float, neutral: float, contradict: float):
    entail, neutral, contradict = (max(0.0, x) for x in (entail, neutral, contradict))
    total = entail + neutral + contradict
    if total == 0.0:
        return (1 / 3, 1 / 3, 1 / 3)
    return (entail / total, neutral / total, contradict / total)


# ---------------------------------------------------------------------------
# remote clients


class _RemoteBase:
    kind = "remote"

    def __init__(self, endpoint: str, session=None, timeout: float = 30.0,
                 attempts: int = RETRY_ATTEMPTS, backoff: float = RETRY_BACKOFF,
                 token: str | None = None):
        self.endpoint = endpoint.rstrip("/")
        self._session = session or requests.Session()
        self._timeout = timeout
        self._attempts = attempts
        self._backoff = backoff
        self._token = token if token is not None else os.environ.get(GATEWAY_TOKEN_VAR)

    def _request(self, method: str, path: str, payload=None) -> dict:
        url = self.endpoint + path
        headers = {"Authorization": f"Bearer {self._token}"} if self._token else {}
        last_error = None
        for attempt in range(self._attempts):
            try:
                resp = self._session.request(
                    method, url, json=payload, timeout=self._timeout, headers=headers
                )
            except requests.RequestException as exc:
                last_error = exc
            else:
                if resp.status_code >= 500:
                    last_error = GatewayUnavailableError(
                        f"{url} answered {resp.status_code}"
                    )
                elif resp.status_code >= 400:
                    raise GatewayProtocolError(
                        f"{url} answered {resp.status_code}: {_error_text(resp)}"
                    )
                else:
                    try:
                        return resp.json()
                    except ValueError as exc:
                        raise GatewayProtocolError(f"{url}: non-JSON response") from exc
            if attempt + 1 < self._attempts:
                time.sleep(self._backoff * (2**attempt))
        raise GatewayUnavailableError(
            f"{url} unreachable after {self._attempts} attempts: {last_error}"
        )


def _error_text(resp) -> str:
    try:
        return resp.json().get("error", resp.text)
    except ValueError:
        return resp.text


def fetch_info(endpoint: str, session=None, timeout: float = 30.0) -> dict:
    """GET /v1/info; raises GatewayProtocolError on schema violations."""
    client = _RemoteBase(endpoint, session=session, timeout=timeout)
    info = client._request("GET", "/v1/info")
    if "embedder_id" not in info or "dim" not in info:
        raise GatewayProtocolError(f"/v1/info missing embedder_id/dim: {info}")
    return info


class RemoteEmbedder(_RemoteBase):
    """Client of POST /v1/embed. Declared dim is checked on every response."""

    def __init__(self, endpoint: str, dim: int, embedder_id: str, **kw):
        super().__init__(endpoint, **kw)
        if dim <= 0:
            raise ValueError("dim must be positive")
        self.dim = dim
        self.id = embedder_id

    @classmethod
    def from_endpoint(cls, endpoint: str, **kw) -> "RemoteEmbedder":
        info = fetch_info(endpoint, session=kw.get("session"))
        return cls(endpoint, dim=int(info["dim"]), embedder_id=str(info["embedder_id"]), **kw)

    def embed(self, texts: list[str]) -> np.ndarray:
        if not isinstance(texts, (list, tuple)) or len(texts) == 0:
            raise ValueError("texts must be a non-empty list")
        data = self._request("POST", "/v1/embed", {"texts": list(texts)})
        vectors = data.get("vectors")
        if vectors is None or data.get("dim") != self.dim:
            raise GatewayProtocolError(
                f"/v1/embed returned dim {data.get('dim')}, declared {self.dim}"
            )
        if len(vectors) != len(texts):
            raise GatewayProtocolError(
                f"/v1/embed returned {len(vectors)} vectors for {len(texts)} texts"
            )
        matrix = np.asarray(vectors, dtype=np.float32)
        if matrix.shape != (len(texts), self.dim):
            raise GatewayProtocolError(f"/v1/embed vector shape {matrix.shape}")
        return matrix


class RemoteSentenceScorer(_RemoteBase):
    """Client of POST /v1/similarity; scores must lie in [0, 1]."""

    def score_sentences(self, claim: str, sentences: list[str]) -> list[float]:
        if not sentences:
            raise ValueError("sentences must be non-empty")
        data = self._request(
            "POST", "/v1/similarity", {"claim": claim, "sentences": list(sentences)}
        )
        scores = data.get("scores")
        if scores is None or len(scores) != len(sentences):
            raise GatewayProtocolError(f"/v1/similarity returned {scores!r}")
        scores = [float(s) for s in scores]
        if any(s < -1e-9 or s > 1.0 + 1e-9 for s in scores):
            raise GatewayProtocolError(f"/v1/similarity scores out of [0,1]: {scores}")
        return [min(1.0, max(0.0, s)) for s in scores]


class RemoteNli(_RemoteBase):
    """Client of POST /v1/nli; each triple must sum to 1 within 1e-6."""

    def nli(self, premise: str, hypothesis: str) -> tuple[float, float, float]:
        return self.nli_batch([(premise, hypothesis)])[0]

    def nli_batch(self, pairs: list[tuple[str, str]]) -> list[tuple[float, float, float]]:
        if not pairs:
            raise ValueError("pairs must be non-empty")
        payload = {
            "pairs": [{"premise": p, "hypothesis": h} for p, h in pairs]
        }
        data = self._request("POST", "/v1/nli", payload)
        labels = data.get("labels")
        if labels is None or len(labels) != len(pairs):
            raise GatewayProtocolError(f"/v1/nli returned {labels!r}")
        triples = []
        for label in labels:
            try:
                triple = (
                    float(label["entailment"]),
                    float(label["neutral"]),
                    float(label["contradiction"]),
                )
            except (KeyError, TypeError) as exc:
                raise GatewayProtocolError(f"/v1/nli label {label!r}") from exc
            if any(x < 0 for x in triple) or abs(sum(triple) - 1.0) > 1e-6:
                raise GatewayProtocolError(f"/v1/nli triple does not sum to 1: {triple}")
            triples.append(triple)
        return triples


# ---------------------------------------------------------------------------
# scorer bundle


@dataclass
class Scorers:
    """The three pipeline scorers resolved from one configuration."""

    embedder: object
    sentence_scorer: object
    nli: object


def resolve_scorers(gateway: str | None = None, dim: int = DEFAULT_DIM, **kw) -> Scorers:
    """`gateway=None` (or "fallback") yields the offline scorers; a URL yields
    remote clients bound to that endpoint."""
    if gateway is None or gateway == "fallback":
        return Scorers(HashEmbedder(dim=dim), LexicalScorer(), HeuristicNli())
    return Scorers(
        RemoteEmbedder.from_endpoint(gateway, **kw),
        RemoteSentenceScorer(gateway, **kw),
        RemoteNli(gateway, **kw),
    )


# ---------------------------------------------------------------------------
# protocol conformance


@dataclass
class ConformanceReport:
    checks: list[tuple[str, bool, str]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(ok for _, ok, _ in self.checks)

    def record(self, name: str, ok: bool, detail: str = "") -> None:
        self.checks.append((name, ok, detail))

    def format(self) -> str:
        lines = [
            f"[{'PASS' if ok else 'FAIL'}] {name}" + (f": {detail}" if detail else "")
            for name, ok, detail in self.checks
        ]
        lines.append(f"conformance: {'PASS' if self.passed else 'FAIL'}")
        return "\n".join(lines)


_PROBE_TEXTS = [
    "Vitamin C prevents the common cold.",
    "Aspirin lowers the risk of myocardial infarction.",
    "TMEM27 is cleaved in human beta cells.",
]


def run_conformance(endpoint: str, timeout: float = 30.0) -> ConformanceReport:
    """Exercise every endpoint of a protocol server and validate the contract:
    schema-valid responses, unit-norm embeddings of the declared dim,
    NLI triples summing to 1 within 1e-6, order-preserving batches."""
    report = ConformanceReport()

    try:
        info = fetch_info(endpoint, timeout=timeout)
        report.record("info.schema", True, f"embedder_id={info['embedder_id']} dim={info['dim']}")
    except Exception as exc:
        report.record("info.schema", False, str(exc))
        return report

    dim = int(info["dim"])
    embedder = RemoteEmbedder(endpoint, dim=dim, embedder_id=str(info["embedder_id"]), timeout=timeout)
    try:
        vectors = embedder.embed(_PROBE_TEXTS)
        report.record("embed.dim", vectors.shape == (len(_PROBE_TEXTS), dim))
        norms = np.linalg.norm(vectors, axis=1)
        ok = bool(np.all(np.abs(norms - 1.0) < 1e-5))
        report.record("embed.unit_norm", ok, f"norms={norms.round(6).tolist()}")
        reversed_vectors = embedder.embed(list(reversed(_PROBE_TEXTS)))
        ok = bool(np.allclose(reversed_vectors[::-1], vectors, atol=1e-6))
        report.record("embed.order_preserving", ok)
        single = embedder.embed([_PROBE_TEXTS[0]])
        ok = bool(np.allclose(single[0], vectors[0], atol=1e-6))
        report.record("embed.batch_consistent", ok)
    except Exception as exc:
        report.record("embed", False, str(exc))

    scorer = RemoteSentenceScorer(endpoint, timeout=timeout)
    try:
        scores = scorer.score_sentences(_PROBE_TEXTS[0], _PROBE_TEXTS)
        report.record("similarity.range", all(0.0 <= s <= 1.0 for s in scores))
        swapped = scorer.score_sentences(_PROBE_TEXTS[0], list(reversed(_PROBE_TEXTS)))
        report.record(
            "similarity.order_preserving",
            all(abs(a - b) < 1e-6 for a, b in zip(swapped, reversed(scores))),
        )
    except Exception as exc:
        report.record("similarity", False, str(exc))

    nli = RemoteNli(endpoint, timeout=timeout)
    try:
        pairs = [(a, b) for a in _PROBE_TEXTS[:2] for b in _PROBE_TEXTS[:2]]
        triples = nli.nli_batch(pairs)
        ok = all(abs(sum(t) - 1.0) <= 1e-6 and all(x >= 0 for x in t) for t in triples)
        report.record("nli.sum_to_one", ok)
        report.record("nli.batch_size", len(triples) == len(pairs))
        single = nli.nli(*pairs[0])
        report.record(
            "nli.batch_consistent",
            all(abs(a - b) < 1e-6 for a, b in zip(single, triples[0])),
        )
    except Exception as exc:
        report.record("nli", False, str(exc))

    return report
