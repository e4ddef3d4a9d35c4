"""Precomputed embedding store.

Binary layout (little endian):

    magic  b"EMBF"
    u32    format version (1)
    u32    dim
    u32    provider tag byte length
    bytes  provider tag (UTF-8)
    then per record: 32-byte sha256 of the text, dim float32 values

Records are keyed by content hash, not entry id, so re-segmenting the
corpus reuses the same vectors. The writer sorts records by key, making
the file a deterministic function of its contents. A JSONL debug form
exists for eyeballing.
"""

from __future__ import annotations

import hashlib
import json
import struct
from pathlib import Path

import numpy as np

from ..errors import MissingEmbedding
from .vectors import l2_normalize

MAGIC = b"EMBF"
VERSION = 1


def text_key(text: str) -> bytes:
    return hashlib.sha256(text.encode("utf-8")).digest()


def write_store(
    path: str | Path,
    dim: int,
    provider_tag: str,
    vectors_by_text: dict[str, np.ndarray] | dict[bytes, np.ndarray],
    normalize: bool = True,
) -> None:
    records: dict[bytes, np.ndarray] = {}
    for key, vec in vectors_by_text.items():
        digest = text_key(key) if isinstance(key, str) else key
        arr = np.asarray(vec, dtype=np.float32)
        if arr.shape != (dim,):
            raise ValueError(f"vector shape {arr.shape} does not match dim {dim}")
        # keep already-normalized input byte-stable (round-trip contract)
        if normalize and abs(float(np.linalg.norm(arr)) - 1.0) > 1e-6:
            arr = l2_normalize(arr)
        records[digest] = arr

    tag = provider_tag.encode("utf-8")
    with Path(path).open("wb") as fh:
        fh.write(MAGIC)
        fh.write(struct.pack("<III", VERSION, dim, len(tag)))
        fh.write(tag)
        for digest in sorted(records):
            fh.write(digest)
            fh.write(records[digest].astype("<f4").tobytes())


def read_store(path: str | Path) -> tuple[int, str, dict[bytes, np.ndarray]]:
    raw = Path(path).read_bytes()
    if raw[:4] != MAGIC:
        raise ValueError(f"{path}: not an embedding store")
    version, dim, tag_len = struct.unpack_from("<III", raw, 4)
    if version != VERSION:
        raise ValueError(f"{path}: unsupported store version {version}")
    offset = 16 + tag_len
    tag = raw[16:offset].decode("utf-8")
    record_size = 32 + 4 * dim
    body = raw[offset:]
    if len(body) % record_size:
        raise ValueError(f"{path}: truncated record data")
    records: dict[bytes, np.ndarray] = {}
    for start in range(0, len(body), record_size):
        digest = body[start : start + 32]
        values = np.frombuffer(body[start + 32 : start + record_size], dtype="<f4")
        records[digest] = values.astype(np.float32)
    return dim, tag, records


def write_store_jsonl(path: str | Path, dim: int, provider_tag: str, records: dict[bytes, np.ndarray]) -> None:
    with Path(path).open("w", encoding="utf-8") as fh:
        fh.write(json.dumps({"dim": dim, "provider_tag": provider_tag}) + "\n")
        for digest in sorted(records):
            row = {"sha256": digest.hex(), "vector": [float(v) for v in records[digest]]}
            fh.write(json.dumps(row) + "\n")


class FileEmbedder:
    """Embedding lookup over a precomputed store; unknown texts are an error."""

    kind = "file"

    def __init__(self, path: str | Path):
        self.path = Path(path)
        self.dim, store_tag, self._records = read_store(path)
        self.provider_tag = f"file:{store_tag}"

    def embed(self, texts: list[str]) -> np.ndarray:
        out = np.zeros((len(texts), self.dim), dtype=np.float32)
        for i, text in enumerate(texts):
            vec = self._records.get(text_key(text))
            if vec is None:
                raise MissingEmbedding(f"no stored embedding for text: {text[:60]!r}")
            out[i] = vec
        return out
