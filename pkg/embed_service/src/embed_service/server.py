"""The two transports.

Wire schema, shared by both:

    request  {"id": "<opaque>", "text": "..."}
    response {"id": "<same>", "vector": [...], "dim": N}

Stdio reads newline-delimited JSON and answers strictly in input order; a
malformed line yields {"error": ..., "line": N} and the stream continues.
HTTP accepts POST /embed with one request object or an array of them and
mirrors the shape in the response.
"""

from __future__ import annotations

import json
import threading
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer


def embed_batched(backend, texts: list[str], batch_size: int) -> list[list[float]]:
    out: list[list[float]] = []
    for start in range(0, len(texts), batch_size):
        vectors = backend.encode(texts[start : start + batch_size])
        out.extend([float(v) for v in row] for row in vectors)
    return out


def serve_stdio(backend, stdin, stdout, batch_size: int = 64) -> None:
    """Answer requests until EOF, one response line per request line.

    Lines are batched internally but responses keep input order; errors are
    reported in place so a bad line never desynchronizes the stream.
    """
    pending: list[tuple[str, str]] = []  # (request id, text)
    lineno = 0

    def flush():
        if not pending:
            return
        vectors = embed_batched(backend, [text for _, text in pending], batch_size)
        for (req_id, _), vector in zip(pending, vectors):
            stdout.write(
                json.dumps({"id": req_id, "vector": vector, "dim": backend.dim}) + "\n"
            )
        pending.clear()
        stdout.flush()

    for line in stdin:
        lineno += 1
        line = line.strip()
        if not line:
            continue
        try:
            request = json.loads(line)
            req_id = request["id"]
            text = request["text"]
            if not isinstance(req_id, str) or not isinstance(text, str):
                raise ValueError("id and text must be strings")
        except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
            flush()  # keep order: everything before the bad line answers first
            stdout.write(json.dumps({"error": f"malformed request: {exc}", "line": lineno}) + "\n")
            stdout.flush()
            continue
        pending.append((req_id, text))
        if len(pending) >= batch_size:
            flush()
    flush()


class _Handler(BaseHTTPRequestHandler):
    backend = None
    batch_size = 64

    def log_message(self, *args):  # quiet by default
        pass

    def _reply(self, status: int, payload) -> None:
        body = json.dumps(payload).encode("utf-8")
        self.send_response(status)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(body)))
        self.end_headers()
        self.wfile.write(body)

    def do_POST(self):
        if self.path.rstrip("/") != "/embed":
            self._reply(404, {"error": "unknown endpoint"})
            return
        try:
            length = int(self.headers.get("Content-Length", "0"))
            payload = json.loads(self.rfile.read(length).decode("utf-8"))
        except (ValueError, json.JSONDecodeError) as exc:
            self._reply(400, {"error": f"malformed request body: {exc}"})
            return
        single = isinstance(payload, dict)
        requests = [payload] if single else payload
        try:
            texts = [r["text"] for r in requests]
            ids = [r["id"] for r in requests]
        except (KeyError, TypeError) as exc:
            self._reply(400, {"error": f"malformed request: {exc}"})
            return
        vectors = embed_batched(self.backend, texts, self.batch_size)
        responses = [
            {"id": req_id, "vector": vector, "dim": self.backend.dim}
            for req_id, vector in zip(ids, vectors)
        ]
        self._reply(200, responses[0] if single else responses)


def make_http_server(backend, host: str, port: int, batch_size: int = 64) -> ThreadingHTTPServer:
    handler = type("BoundHandler", (_Handler,), {"backend": backend, "batch_size": batch_size})
    return ThreadingHTTPServer((host, port), handler)


def serve_http(backend, host: str, port: int, batch_size: int = 64) -> None:
    server = make_http_server(backend, host, port, batch_size)
    try:
        server.serve_forever()
    finally:
        server.server_close()


def run_http_in_thread(backend, host: str = "127.0.0.1", port: int = 0, batch_size: int = 64):
    """Start the HTTP server on a daemon thread; returns (server, bound port)."""
    server = make_http_server(backend, host, port, batch_size)
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    return server, server.server_address[1]
