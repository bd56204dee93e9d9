"""In-process HTTP server implementing the gateway wire protocol for tests."""

import json
import threading
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer

import numpy as np

from claimlens.gateway import HashEmbedder, HeuristicNli, LexicalScorer


class ProtocolHandler(BaseHTTPRequestHandler):
    embedder = HashEmbedder(dim=32)
    scorer = LexicalScorer()
    nli = HeuristicNli()
    fail_first_n = 0  # induced 500s, for retry tests
    _failures = {"count": 0}

    def log_message(self, *args):
        pass

    def _json(self, code, payload):
        data = json.dumps(payload).encode("utf-8")
        self.send_response(code)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(data)))
        self.end_headers()
        self.wfile.write(data)

    def _read_body(self):
        length = int(self.headers.get("Content-Length", 0))
        return json.loads(self.rfile.read(length)) if length else {}

    def do_GET(self):
        if self.path == "/v1/info":
            self._json(
                200,
                {
                    "embedder_id": self.embedder.id,
                    "dim": self.embedder.dim,
                    "models": {
                        "embed": "hash", "similarity": "jaccard", "nli": "heuristic"
                    },
                },
            )
        else:
            self._json(404, {"error": f"unknown path {self.path}"})

    def do_POST(self):
        if ProtocolHandler._failures["count"] < ProtocolHandler.fail_first_n:
            ProtocolHandler._failures["count"] += 1
            self._json(503, {"error": "induced failure"})
            return
        try:
            body = self._read_body()
            if self.path == "/v1/embed":
                vectors = self.embedder.embed(list(body["texts"]))
                self._json(200, {"dim": self.embedder.dim, "vectors": vectors.tolist()})
            elif self.path == "/v1/similarity":
                scores = self.scorer.score_sentences(body["claim"], list(body["sentences"]))
                self._json(200, {"scores": scores})
            elif self.path == "/v1/nli":
                labels = []
                for pair in body["pairs"]:
                    e, n, c = self.nli.nli(pair["premise"], pair["hypothesis"])
                    labels.append({"entailment": e, "neutral": n, "contradiction": c})
                self._json(200, {"labels": labels})
            else:
                self._json(404, {"error": f"unknown path {self.path}"})
        except Exception as exc:  # noqa: BLE001 - surface as protocol error body
            self._json(400, {"error": str(exc)})


class ReferenceServer:
    """Context manager running the protocol server on an ephemeral port."""

    def __init__(self, handler=ProtocolHandler, fail_first_n=0):
        handler.fail_first_n = fail_first_n
        handler._failures = {"count": 0}
        self._server = ThreadingHTTPServer(("127.0.0.1", 0), handler)
        self._thread = threading.Thread(target=self._server.serve_forever, daemon=True)

    @property
    def url(self):
        host, port = self._server.server_address
        return f"http://{host}:{port}"

    def __enter__(self):
        self._thread.start()
        return self

    def __exit__(self, *exc):
        self._server.shutdown()
        self._server.server_close()
        self._thread.join(timeout=5)


class TokenRequiredHandler(ProtocolHandler):
    """Rejects requests lacking the static bearer token."""

    token = "sesame"

    def do_GET(self):
        if self.headers.get("Authorization") != f"Bearer {self.token}":
            self._json(401, {"error": "missing or bad token"})
            return
        super().do_GET()

    def do_POST(self):
        if self.headers.get("Authorization") != f"Bearer {self.token}":
            self._json(401, {"error": "missing or bad token"})
            return
        super().do_POST()


class BrokenDimHandler(ProtocolHandler):
    """Announces dim from info but returns short vectors: a protocol violation."""

    def do_POST(self):
        if self.path == "/v1/embed":
            body = self._read_body()
            bad = np.zeros((len(body["texts"]), self.embedder.dim - 1))
            bad[:, 0] = 1.0
            self._json(200, {"dim": self.embedder.dim - 1, "vectors": bad.tolist()})
        else:
            super().do_POST()
