"""Precision/recall/F1 containers shared by the evaluation operations."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Metrics:
    precision: float
    recall: float
    f1: float

    def as_dict(self) -> dict[str, float]:
        return {"precision": self.precision, "recall": self.recall, "f1": self.f1}


def precision_recall_f1(correct: int, predicted: int, gold_positive: int) -> Metrics:
    """Empty denominators report 0 rather than raising."""
    precision = correct / predicted if predicted else 0.0
    recall = correct / gold_positive if gold_positive else 0.0
    f1 = 2 * precision * recall / (precision + recall) if precision + recall else 0.0
    return Metrics(precision=precision, recall=recall, f1=f1)
