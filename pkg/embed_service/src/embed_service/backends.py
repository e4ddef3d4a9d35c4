"""Embedding backends.

The backend string picks the model:

    hash:<dim>[:<seed>]   deterministic hashed character n-grams, no downloads
    st:<model id>         any sentence-transformers model (needs the package
                          and, on first use, network access to fetch weights)

``st:`` is the production choice; the default model id is a multilingual
sentence encoder that handles Swedish. ``hash:`` exists so the protocol and
file format can be exercised offline and reproducibly.
"""

from __future__ import annotations

import hashlib

import numpy as np

DEFAULT_MODEL = "st:sentence-transformers/paraphrase-multilingual-MiniLM-L12-v2"
HASH_ORDERS = (1, 2, 3)


class ModelLoadError(Exception):
    pass


def l2_normalize_rows(arr: np.ndarray) -> np.ndarray:
    norms = np.linalg.norm(arr, axis=1, keepdims=True)
    norms[norms == 0.0] = 1.0
    return (arr / norms).astype(np.float32)


class HashedNgramBackend:
    """Signed hashed character n-grams; a pure function of (text, dim, seed)."""

    def __init__(self, dim: int = 256, seed: int = 0):
        if dim <= 0:
            raise ModelLoadError("hash backend needs a positive dimension")
        self.dim = dim
        self.seed = seed
        self.tag = f"hash:{dim}:{seed}"
        self._salt = seed.to_bytes(8, "little")

    def _embed_one(self, text: str) -> np.ndarray:
        vec = np.zeros(self.dim, dtype=np.float64)
        for n in HASH_ORDERS:
            for i in range(len(text) - n + 1):
                digest = hashlib.blake2b(
                    text[i : i + n].encode("utf-8"), digest_size=8, salt=self._salt
                ).digest()
                value = int.from_bytes(digest, "little")
                vec[value % self.dim] += 1.0 if value & (1 << 63) == 0 else -1.0
        return vec

    def encode(self, texts: list[str]) -> np.ndarray:
        if not texts:
            return np.zeros((0, self.dim), dtype=np.float32)
        return l2_normalize_rows(np.stack([self._embed_one(t) for t in texts]))


class SentenceTransformerBackend:
    def __init__(self, model_id: str):
        try:
            from sentence_transformers import SentenceTransformer
        except ImportError as exc:
            raise ModelLoadError("sentence-transformers is not installed") from exc
        try:
            self._model = SentenceTransformer(model_id)
        except Exception as exc:  # noqa: BLE001 - any load failure is fatal here
            raise ModelLoadError(f"cannot load model {model_id!r}: {exc}") from exc
        self.dim = int(self._model.get_sentence_embedding_dimension())
        self.tag = f"st:{model_id}"

    def encode(self, texts: list[str]) -> np.ndarray:
        if not texts:
            return np.zeros((0, self.dim), dtype=np.float32)
        vectors = self._model.encode(texts, convert_to_numpy=True, show_progress_bar=False)
        return l2_normalize_rows(np.asarray(vectors, dtype=np.float32))


def load_backend(spec: str = DEFAULT_MODEL):
    if spec.startswith("hash:"):
        parts = spec.split(":")
        try:
            dim = int(parts[1])
            seed = int(parts[2]) if len(parts) > 2 else 0
        except (IndexError, ValueError) as exc:
            raise ModelLoadError(f"bad hash backend spec {spec!r}") from exc
        return HashedNgramBackend(dim=dim, seed=seed)
    if spec.startswith("st:"):
        return SentenceTransformerBackend(spec[3:])
    raise ModelLoadError(f"unknown backend spec {spec!r}; use hash:<dim> or st:<model id>")
