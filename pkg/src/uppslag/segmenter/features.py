"""Hashed character n-gram features.

Each n-gram order gets its own block of ``dims`` buckets; counts are
L2-normalized per order and the blocks concatenated. The hash is keyed
blake2b, so bucket assignment is stable across runs and platforms.
"""

from __future__ import annotations

import hashlib
from collections import Counter
from typing import Iterable

import numpy as np
from scipy import sparse

from ..errors import EmptyText

DEFAULT_ORDERS = (1, 2, 3)
DEFAULT_DIMS = 2**16
DEFAULT_HASH_SEED = 0


def gram_bucket(gram: str, dims: int, seed: int) -> int:
    digest = hashlib.blake2b(
        gram.encode("utf-8"), digest_size=8, salt=seed.to_bytes(8, "little")
    ).digest()
    return int.from_bytes(digest, "little") % dims


def ngram_featurize(
    text: str,
    orders: Iterable[int] = DEFAULT_ORDERS,
    dims: int = DEFAULT_DIMS,
    seed: int = DEFAULT_HASH_SEED,
) -> dict[int, float]:
    """Sparse feature vector for ``text`` as {concatenated index: weight}.

    Raises EmptyText for the empty string. Orders with no grams (text
    shorter than n) contribute an all-zero block.
    """
    if not text:
        raise EmptyText("cannot featurize empty text")
    ordered = sorted(set(orders))
    features: dict[int, float] = {}
    for block, n in enumerate(ordered):
        counts: Counter[int] = Counter()
        for i in range(len(text) - n + 1):
            counts[gram_bucket(text[i : i + n], dims, seed)] += 1
        if not counts:
            continue
        norm = float(np.sqrt(sum(c * c for c in counts.values())))
        offset = block * dims
        for bucket, count in counts.items():
            features[offset + bucket] = count / norm
    return features


def feature_dim(orders: Iterable[int], dims: int) -> int:
    return len(set(orders)) * dims


def to_csr(vectors: list[dict[int, float]], total_dim: int) -> sparse.csr_matrix:
    """Stack sparse feature dicts into a CSR matrix for training."""
    indptr = [0]
    indices: list[int] = []
    data: list[float] = []
    for vec in vectors:
        for idx in sorted(vec):
            indices.append(idx)
            data.append(vec[idx])
        indptr.append(len(indices))
    return sparse.csr_matrix(
        (np.asarray(data), np.asarray(indices, dtype=np.int64), np.asarray(indptr, dtype=np.int64)),
        shape=(len(vectors), total_dim),
    )
