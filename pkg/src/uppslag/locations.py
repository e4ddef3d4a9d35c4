"""Location flagging: a logistic head over document embeddings."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .embedder.base import Embedder
from .errors import DimMismatch
from .segmenter.entries import Entry
from .segmenter.logistic import (
    DEFAULT_L2,
    DEFAULT_MAX_EPOCHS,
    DEFAULT_TOL,
    sigmoid,
    train_logistic,
)

DEFAULT_LOCATION_THRESHOLD = 0.5


@dataclass
class LocationModel:
    weights: np.ndarray
    bias: float
    dim: int
    provider_tag: str
    threshold: float = DEFAULT_LOCATION_THRESHOLD


def train_location_model(
    labeled: list[tuple[Entry, bool]],
    embedder: Embedder,
    l2: float = DEFAULT_L2,
    max_epochs: int = DEFAULT_MAX_EPOCHS,
    tol: float = DEFAULT_TOL,
    threshold: float = DEFAULT_LOCATION_THRESHOLD,
) -> LocationModel:
    """Fit the head on truncated entry texts; SingleClassTraining if one-sided."""
    X = embedder.embed([entry.truncated_text for entry, _ in labeled]) if labeled else np.zeros((0, embedder.dim))
    y = np.array([1.0 if is_location else 0.0 for _, is_location in labeled])
    weights, bias, _ = train_logistic(X.astype(np.float64), y, l2=l2, max_epochs=max_epochs, tol=tol)
    return LocationModel(
        weights=weights,
        bias=bias,
        dim=embedder.dim,
        provider_tag=embedder.provider_tag,
        threshold=threshold,
    )


def location_prob(model: LocationModel, vector: np.ndarray) -> float:
    if vector.shape != (model.dim,):
        raise DimMismatch(f"embedding dim {vector.shape} != model dim {model.dim}")
    return float(sigmoid(float(np.dot(model.weights, vector)) + model.bias))


def classify_location(model: LocationModel, entry: Entry, embedder: Embedder) -> tuple[bool, float]:
    """(is_location, probability); cross-references are never locations."""
    if model.dim != embedder.dim:
        raise DimMismatch(f"model dim {model.dim} != embedder dim {embedder.dim}")
    if entry.is_crossref:
        return False, 0.0
    prob = location_prob(model, embedder.embed([entry.truncated_text])[0])
    return prob >= model.threshold, prob


def annotate_locations(entries: list[Entry], model: LocationModel, embedder: Embedder) -> int:
    """Set is_location flags in place; returns the number of locations."""
    if model.dim != embedder.dim:
        raise DimMismatch(f"model dim {model.dim} != embedder dim {embedder.dim}")
    candidates = [e for e in entries if not e.is_crossref]
    count = 0
    if candidates:
        vectors = embedder.embed([e.truncated_text for e in candidates])
        for entry, vec in zip(candidates, vectors):
            entry.is_location = location_prob(model, np.asarray(vec)) >= model.threshold
            count += entry.is_location
    for entry in entries:
        if entry.is_crossref:
            entry.is_location = False
    return count


def save_location_model(model: LocationModel, path: str | Path) -> None:
    payload = {
        "dim": model.dim,
        "weights": [float(w) for w in model.weights],
        "bias": model.bias,
        "threshold": model.threshold,
        "provider_tag": model.provider_tag,
    }
    Path(path).write_text(json.dumps(payload) + "\n", encoding="utf-8")


def load_location_model(path: str | Path) -> LocationModel:
    payload = json.loads(Path(path).read_text(encoding="utf-8"))
    return LocationModel(
        weights=np.asarray(payload["weights"], dtype=np.float64),
        bias=payload["bias"],
        dim=payload["dim"],
        provider_tag=payload["provider_tag"],
        threshold=payload["threshold"],
    )
