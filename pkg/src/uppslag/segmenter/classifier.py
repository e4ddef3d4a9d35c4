"""Third cascade step: a logistic head over hashed character n-grams.

Training data comes for free from the corpus structure: bold-initial
paragraphs are entries, and in an alphabetically bound volume a paragraph
starting with a capital letter outside the volume's letter range cannot
be one.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Optional

import numpy as np

from ..corpus.model import Page, Paragraph
from ..errors import EmptyText
from .entries import TRUNCATED_LEN, clean_headword
from .features import (
    DEFAULT_DIMS,
    DEFAULT_HASH_SEED,
    DEFAULT_ORDERS,
    feature_dim,
    ngram_featurize,
    to_csr,
)
from .logistic import DEFAULT_L2, DEFAULT_MAX_EPOCHS, DEFAULT_TOL, sigmoid, train_logistic

HEADWORD_STOP_CHARS = ".,("

MODEL_MAGIC = b"UPSG"
MODEL_VERSION = 1


@dataclass
class EntryClassifier:
    dims: int
    orders: tuple[int, ...]
    hash_seed: int
    weights: np.ndarray
    bias: float
    threshold: float = 0.5

    def featurize(self, text: str) -> dict[int, float]:
        return ngram_featurize(text[:TRUNCATED_LEN], self.orders, self.dims, self.hash_seed)

    def prob(self, text: str) -> float:
        vec = self.featurize(text)
        z = sum(self.weights[i] * v for i, v in vec.items()) + self.bias
        return float(sigmoid(z))


def build_entry_training_set(
    pages: Iterable[Page],
    volume_letter_set: set[str],
) -> list[tuple[str, bool]]:
    """Label paragraphs: bold-initial ones are entries, wrong-letter capitals are not.

    Everything else is left out. Returned texts are plain (bold markup is
    already stripped in the Page model).
    """
    letters = {ch.upper() for ch in volume_letter_set}
    labeled: list[tuple[str, bool]] = []
    for page in pages:
        for para in page.paragraphs:
            if not para.text:
                continue
            if para.bold_spans and para.bold_spans[0][0] == 0:
                labeled.append((para.text, True))
                continue
            first = para.text[0]
            if first.isalpha() and first.isupper() and first.upper() not in letters:
                labeled.append((para.text, False))
    return labeled


def train_entry_classifier(
    labeled: list[tuple[str, bool]],
    dims: int = DEFAULT_DIMS,
    orders: Iterable[int] = DEFAULT_ORDERS,
    hash_seed: int = DEFAULT_HASH_SEED,
    l2: float = DEFAULT_L2,
    max_epochs: int = DEFAULT_MAX_EPOCHS,
    tol: float = DEFAULT_TOL,
    threshold: float = 0.5,
) -> EntryClassifier:
    orders = tuple(sorted(set(orders)))
    vectors = [ngram_featurize(text[:TRUNCATED_LEN], orders, dims, hash_seed) for text, _ in labeled]
    X = to_csr(vectors, feature_dim(orders, dims))
    y = np.array([1.0 if label else 0.0 for _, label in labeled])
    weights, bias, _ = train_logistic(X, y, l2=l2, max_epochs=max_epochs, tol=tol)
    return EntryClassifier(
        dims=dims,
        orders=orders,
        hash_seed=hash_seed,
        weights=weights,
        bias=bias,
        threshold=threshold,
    )


def predict_entry(clf: EntryClassifier, paragraph: Paragraph) -> tuple[bool, float]:
    """(is_entry, probability) for one paragraph; EmptyText on empty input."""
    if not paragraph.text:
        raise EmptyText("cannot classify empty paragraph")
    prob = clf.prob(paragraph.text)
    return prob >= clf.threshold, prob


def classifier_headword(text: str) -> Optional[str]:
    """Headword for a classifier-segmented entry: text up to the first '.', ',' or '('."""
    cut = len(text)
    for ch in HEADWORD_STOP_CHARS:
        pos = text.find(ch)
        if pos != -1:
            cut = min(cut, pos)
    headword = clean_headword(text[:cut])
    return headword or None


def save_entry_classifier(clf: EntryClassifier, path: str | Path) -> None:
    """Write the model: one JSON header line, then nonzero weights as raw arrays."""
    nz = np.nonzero(clf.weights)[0].astype(np.int64)
    values = clf.weights[nz].astype(np.float64)
    header = {
        "version": MODEL_VERSION,
        "dims": clf.dims,
        "orders": list(clf.orders),
        "hash_seed": clf.hash_seed,
        "bias": clf.bias,
        "threshold": clf.threshold,
        "nonzero": int(nz.size),
    }
    with Path(path).open("wb") as fh:
        fh.write(MODEL_MAGIC)
        fh.write((json.dumps(header, sort_keys=True) + "\n").encode("utf-8"))
        fh.write(nz.tobytes())
        fh.write(values.tobytes())


def load_entry_classifier(path: str | Path) -> EntryClassifier:
    raw = Path(path).read_bytes()
    if raw[:4] != MODEL_MAGIC:
        raise ValueError(f"{path}: not an entry classifier file")
    nl = raw.index(b"\n", 4)
    header = json.loads(raw[4:nl].decode("utf-8"))
    if header["version"] != MODEL_VERSION:
        raise ValueError(f"unsupported model version {header['version']}")
    count = header["nonzero"]
    body = raw[nl + 1 :]
    nz = np.frombuffer(body[: 8 * count], dtype=np.int64)
    values = np.frombuffer(body[8 * count : 16 * count], dtype=np.float64)
    orders = tuple(header["orders"])
    weights = np.zeros(feature_dim(orders, header["dims"]), dtype=np.float64)
    weights[nz] = values
    return EntryClassifier(
        dims=header["dims"],
        orders=orders,
        hash_seed=header["hash_seed"],
        weights=weights,
        bias=header["bias"],
        threshold=header["threshold"],
    )
