"""Deterministic full-batch logistic regression.

Shared by the entry classifier (sparse n-gram features) and the location
classifier (dense embeddings). Plain gradient descent with L2 on the
weights, zero init, and a step size derived from a Lipschitz bound on the
gradient, so the same data always yields the same model.
"""

from __future__ import annotations

import numpy as np
from scipy import sparse

from ..errors import SingleClassTraining

DEFAULT_L2 = 1e-4
DEFAULT_MAX_EPOCHS = 500
DEFAULT_TOL = 1e-6


def sigmoid(z: np.ndarray | float) -> np.ndarray | float:
    return 1.0 / (1.0 + np.exp(-np.clip(z, -500, 500)))


def _row_sq_norms(X) -> np.ndarray:
    if sparse.issparse(X):
        return np.asarray(X.multiply(X).sum(axis=1)).ravel()
    return np.sum(np.asarray(X) ** 2, axis=1)


def train_logistic(
    X,
    y: np.ndarray,
    l2: float = DEFAULT_L2,
    max_epochs: int = DEFAULT_MAX_EPOCHS,
    tol: float = DEFAULT_TOL,
) -> tuple[np.ndarray, float, list[float]]:
    """Fit weights and bias; returns (weights, bias, per-epoch losses).

    Stops when the relative loss change drops below ``tol`` or after
    ``max_epochs`` epochs. Raises SingleClassTraining unless both classes
    are present.
    """
    y = np.asarray(y, dtype=np.float64)
    n = y.shape[0]
    if n == 0 or len(np.unique(y)) < 2:
        raise SingleClassTraining("training set must contain both classes")

    d = X.shape[1]
    w = np.zeros(d, dtype=np.float64)
    b = 0.0
    # Gradient Lipschitz bound: rows enter the Hessian through X^T D X / n
    # with D <= 1/4, plus the bias column and the L2 term.
    lr = 1.0 / (float(np.max(_row_sq_norms(X)) + 1.0) / 4.0 + l2)

    losses: list[float] = []
    prev_loss = None
    for _ in range(max_epochs):
        z = np.asarray(X @ w).ravel() + b
        p = sigmoid(z)
        # mean log-loss, numerically stable form
        loss = float(np.mean(np.logaddexp(0.0, z) - y * z) + 0.5 * l2 * np.dot(w, w))
        losses.append(loss)
        residual = (p - y) / n
        grad_w = np.asarray(X.T @ residual).ravel() + l2 * w
        grad_b = float(np.sum(residual))
        w -= lr * grad_w
        b -= lr * grad_b
        if prev_loss is not None and abs(prev_loss - loss) / max(prev_loss, 1e-12) < tol:
            break
        prev_loss = loss
    return w, b, losses


def predict_proba(X, w: np.ndarray, b: float) -> np.ndarray:
    return np.asarray(sigmoid(np.asarray(X @ w).ravel() + b))
