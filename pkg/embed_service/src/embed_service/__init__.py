"""Embedding provider: serves unit-norm sentence vectors over stdio or HTTP."""

from .backends import DEFAULT_MODEL, HashedNgramBackend, ModelLoadError, load_backend
from .precompute import precompute, read_texts_jsonl
from .server import run_http_in_thread, serve_http, serve_stdio

__all__ = [
    "DEFAULT_MODEL",
    "HashedNgramBackend",
    "ModelLoadError",
    "load_backend",
    "precompute",
    "read_texts_jsonl",
    "run_http_in_thread",
    "serve_http",
    "serve_stdio",
]

__version__ = "0.1.0"
