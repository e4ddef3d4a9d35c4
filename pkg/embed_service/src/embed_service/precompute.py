"""Batch precomputation into the pipeline's embedding-store format.

Store layout (little endian), as documented by the consumer pipeline:

    magic  b"EMBF"
    u32    version (1)
    u32    dim
    u32    provider tag byte length
    bytes  provider tag (UTF-8)
    then per record: 32-byte sha256 of the text, dim float32 values

Records are keyed by content hash, deduplicated, and written in sorted key
order so the output is a deterministic function of the input set.
"""

from __future__ import annotations

import hashlib
import json
import struct
from pathlib import Path

import numpy as np

MAGIC = b"EMBF"
VERSION = 1


def read_texts_jsonl(path: str | Path) -> list[str]:
    texts = []
    with Path(path).open(encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            record = json.loads(line)
            if "text" not in record:
                raise ValueError(f"{path}:{lineno}: record has no 'text' field")
            texts.append(record["text"])
    return texts


def precompute(backend, texts: list[str], output: str | Path, batch_size: int = 64) -> int:
    """Embed texts and write the store; returns the number of stored records."""
    unique: dict[bytes, str] = {}
    for text in texts:
        unique.setdefault(hashlib.sha256(text.encode("utf-8")).digest(), text)

    ordered_keys = sorted(unique)
    vectors: dict[bytes, np.ndarray] = {}
    batch_keys = list(ordered_keys)
    for start in range(0, len(batch_keys), batch_size):
        chunk = batch_keys[start : start + batch_size]
        encoded = backend.encode([unique[key] for key in chunk])
        for key, row in zip(chunk, encoded):
            vectors[key] = np.asarray(row, dtype="<f4")

    tag = backend.tag.encode("utf-8")
    with Path(output).open("wb") as fh:
        fh.write(MAGIC)
        fh.write(struct.pack("<III", VERSION, backend.dim, len(tag)))
        fh.write(tag)
        for key in ordered_keys:
            fh.write(key)
            fh.write(vectors[key].tobytes())
    return len(ordered_keys)
