"""Deterministic mock embedder: signed hashed character n-grams.

A pure function of (text, dim, seed). Texts sharing n-grams land near each
other in cosine space, which is enough to exercise every similarity
threshold in the pipeline without a model.
"""

from __future__ import annotations

import hashlib

import numpy as np

from ..errors import EmptyText
from .vectors import l2_normalize

MOCK_ORDERS = (1, 2, 3)
DEFAULT_MOCK_DIM = 256


def _gram_hash(gram: str, seed: int) -> int:
    digest = hashlib.blake2b(
        gram.encode("utf-8"), digest_size=8, salt=seed.to_bytes(8, "little")
    ).digest()
    return int.from_bytes(digest, "little")


class MockEmbedder:
    kind = "mock"

    def __init__(self, dim: int = DEFAULT_MOCK_DIM, seed: int = 0):
        if dim <= 0:
            raise ValueError("dim must be positive")
        self.dim = dim
        self.seed = seed
        self.provider_tag = f"mock:{dim}:{seed}"

    def _embed_one(self, text: str) -> np.ndarray:
        if not text:
            raise EmptyText("cannot embed empty text")
        vec = np.zeros(self.dim, dtype=np.float64)
        for n in MOCK_ORDERS:
            for i in range(len(text) - n + 1):
                h = _gram_hash(text[i : i + n], self.seed)
                sign = 1.0 if h & (1 << 63) == 0 else -1.0
                vec[h % self.dim] += sign
        return vec

    def embed(self, texts: list[str]) -> np.ndarray:
        if not texts:
            return np.zeros((0, self.dim), dtype=np.float32)
        return l2_normalize(np.stack([self._embed_one(t) for t in texts]))
