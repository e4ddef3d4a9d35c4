"""Vector index over entry embeddings.

The exact method is a brute-force scan (the verification fallback and the
default everywhere determinism matters); the approximate method wraps the
HNSW graph. Query results are sorted by descending similarity with ties
broken by insertion order, in both methods.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from ..embedder.base import Embedder
from ..errors import DimMismatch
from ..segmenter.entries import Entry
from .hnsw import HnswGraph


class VectorIndex:
    def __init__(
        self,
        dim: int,
        method: str = "exact",
        m: int = 16,
        ef_construction: int = 200,
        ef_search: int = 64,
        seed: int = 0,
    ):
        if method not in ("exact", "hnsw"):
            raise ValueError(f"unknown index method {method!r}")
        self.dim = dim
        self.method = method
        self._ids: list[str] = []
        self._rows: list[np.ndarray] = []
        self._matrix: np.ndarray | None = None
        self._graph = (
            HnswGraph(dim, m=m, ef_construction=ef_construction, ef_search=ef_search, seed=seed)
            if method == "hnsw"
            else None
        )

    def __len__(self) -> int:
        return len(self._ids)

    @property
    def ids(self) -> Sequence[str]:
        return tuple(self._ids)

    def add(self, entry_id: str, vector: np.ndarray) -> None:
        vec = np.asarray(vector, dtype=np.float32)
        if vec.shape != (self.dim,):
            raise DimMismatch(f"vector shape {vec.shape} does not match index dim {self.dim}")
        self._ids.append(entry_id)
        self._rows.append(vec)
        self._matrix = None
        if self._graph is not None:
            self._graph.add(vec)

    def _dense(self) -> np.ndarray:
        if self._matrix is None:
            self._matrix = np.stack(self._rows) if self._rows else np.zeros((0, self.dim), np.float32)
        return self._matrix

    def query(self, vector: np.ndarray, k: int) -> list[tuple[str, float]]:
        """Top-k (entry_id, cosine) pairs, best first."""
        if k <= 0 or not self._ids:
            return []
        vec = np.asarray(vector, dtype=np.float32)
        if vec.shape != (self.dim,):
            raise DimMismatch(f"query shape {vec.shape} does not match index dim {self.dim}")
        if self._graph is not None:
            return [(self._ids[node], sim) for node, sim in self._graph.search(vec, k)]
        sims = self._dense() @ vec
        order = np.argsort(-sims, kind="stable")[:k]
        return [(self._ids[i], float(sims[i])) for i in order]


def build_index(
    entries: Iterable[Entry],
    embedder: Embedder,
    method: str = "exact",
    **index_kwargs,
) -> VectorIndex:
    """Index entries by the embedding of their truncated text."""
    entries = list(entries)
    index = VectorIndex(dim=embedder.dim, method=method, **index_kwargs)
    if not entries:
        return index
    vectors = embedder.embed([e.truncated_text for e in entries])
    if vectors.shape[1] != embedder.dim:
        raise DimMismatch(f"embedder returned dim {vectors.shape[1]}, expected {embedder.dim}")
    for entry, vec in zip(entries, vectors):
        index.add(entry.entry_id, vec)
    return index
