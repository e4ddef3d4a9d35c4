"""Client side of the external embedding provider protocol.

Wire format, both transports:
    request  {"id": "<opaque>", "text": "..."}
    response {"id": "<same>", "vector": [...], "dim": N}

Stdio mode talks newline-delimited JSON to a subprocess and relies on the
provider echoing ids; HTTP mode POSTs a JSON array of requests to /embed.
Requests are grouped into bounded batches and sent one batch at a time.
"""

from __future__ import annotations

import json
import subprocess
import threading

import numpy as np

from ..errors import DimMismatch, ProviderUnavailable
from .vectors import l2_normalize

DEFAULT_BATCH_SIZE = 64


class StdioEmbedder:
    kind = "external"

    def __init__(
        self,
        command: list[str],
        dim: int,
        batch_size: int = DEFAULT_BATCH_SIZE,
        provider_tag: str | None = None,
    ):
        self.command = list(command)
        self.dim = dim
        self.batch_size = batch_size
        self.provider_tag = provider_tag or f"external:stdio:{dim}"
        self._proc: subprocess.Popen | None = None
        self._lock = threading.Lock()

    def _ensure_proc(self) -> subprocess.Popen:
        if self._proc is None or self._proc.poll() is not None:
            try:
                self._proc = subprocess.Popen(
                    self.command,
                    stdin=subprocess.PIPE,
                    stdout=subprocess.PIPE,
                    text=True,
                    bufsize=1,
                )
            except OSError as exc:
                raise ProviderUnavailable(f"cannot start provider {self.command}: {exc}") from exc
        return self._proc

    def close(self) -> None:
        if self._proc is not None and self._proc.poll() is None:
            self._proc.stdin.close()
            self._proc.wait(timeout=10)
        self._proc = None

    def __enter__(self):
        return self

    def __exit__(self, *exc_info):
        self.close()

    def _roundtrip(self, batch: list[tuple[str, str]]) -> dict[str, list[float]]:
        proc = self._ensure_proc()
        try:
            for req_id, text in batch:
                proc.stdin.write(json.dumps({"id": req_id, "text": text}, ensure_ascii=False) + "\n")
            proc.stdin.flush()
            responses: dict[str, list[float]] = {}
            for _ in batch:
                line = proc.stdout.readline()
                if not line:
                    raise ProviderUnavailable("provider closed its output stream")
                msg = json.loads(line)
                if "error" in msg:
                    raise ProviderUnavailable(f"provider error: {msg['error']}")
                responses[msg["id"]] = msg["vector"]
            return responses
        except (BrokenPipeError, ValueError, OSError) as exc:
            raise ProviderUnavailable(f"provider i/o failed: {exc}") from exc

    def embed(self, texts: list[str]) -> np.ndarray:
        out = np.zeros((len(texts), self.dim), dtype=np.float32)
        with self._lock:
            for start in range(0, len(texts), self.batch_size):
                chunk = texts[start : start + self.batch_size]
                batch = [(str(start + i), t) for i, t in enumerate(chunk)]
                responses = self._roundtrip(batch)
                for req_id, _ in batch:
                    if req_id not in responses:
                        raise ProviderUnavailable(f"provider did not answer request {req_id}")
                    vec = np.asarray(responses[req_id], dtype=np.float32)
                    if vec.shape != (self.dim,):
                        raise DimMismatch(f"provider returned dim {vec.shape}, expected {self.dim}")
                    out[int(req_id)] = vec
        return l2_normalize(out)


class HttpEmbedder:
    kind = "external"

    def __init__(
        self,
        endpoint: str,
        dim: int,
        batch_size: int = DEFAULT_BATCH_SIZE,
        timeout: float = 30.0,
        provider_tag: str | None = None,
    ):
        self.endpoint = endpoint.rstrip("/")
        self.dim = dim
        self.batch_size = batch_size
        self.timeout = timeout
        self.provider_tag = provider_tag or f"external:http:{dim}"

    def embed(self, texts: list[str]) -> np.ndarray:
        import requests

        out = np.zeros((len(texts), self.dim), dtype=np.float32)
        for start in range(0, len(texts), self.batch_size):
            chunk = texts[start : start + self.batch_size]
            payload = [{"id": str(start + i), "text": t} for i, t in enumerate(chunk)]
            try:
                resp = requests.post(f"{self.endpoint}/embed", json=payload, timeout=self.timeout)
                resp.raise_for_status()
                body = resp.json()
            except requests.RequestException as exc:
                raise ProviderUnavailable(f"embed endpoint failed: {exc}") from exc
            for item in body:
                vec = np.asarray(item["vector"], dtype=np.float32)
                if vec.shape != (self.dim,):
                    raise DimMismatch(f"provider returned dim {vec.shape}, expected {self.dim}")
                out[int(item["id"])] = vec
        return l2_normalize(out)
