"""Multiclass linear classifier (softmax regression) with mini-batch SGD.

The objective is mean softmax cross-entropy plus an L2 penalty on the
non-bias weights. Weights start at zero (the objective is convex, so random
init would only add nondeterminism); shuffling is the sole use of the seed,
making training bit-deterministic for a given (data, config, seed).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
import scipy.sparse as sp

from .features import FeatureVector


class TrainingError(RuntimeError):
    """Training diverged or hit a numeric failure."""


@dataclass(frozen=True)
class TrainConfig:
    seed: int
    learning_rate: float = 0.05
    epochs: int = 30
    batch_size: int = 32
    l2_lambda: float = 1e-4

    def __post_init__(self) -> None:
        if self.learning_rate <= 0:
            raise ValueError("learning_rate must be positive")
        if self.epochs < 0:
            raise ValueError("epochs must be >= 0")
        if self.batch_size < 1:
            raise ValueError("batch_size must be >= 1")
        if self.l2_lambda < 0:
            raise ValueError("l2_lambda must be >= 0")

    def as_dict(self) -> dict:
        return {
            "seed": self.seed,
            "learning_rate": self.learning_rate,
            "epochs": self.epochs,
            "batch_size": self.batch_size,
            "l2_lambda": self.l2_lambda,
        }


@dataclass
class LinearClassifier:
    """Class list plus a C x (V+1) weight matrix; the last column is the bias."""

    classes: tuple[str, ...]
    weights: np.ndarray
    loss_history: tuple[float, ...] = ()

    def __post_init__(self) -> None:
        if len(self.classes) < 2:
            raise ValueError("a classifier needs at least two classes")
        if self.weights.shape[0] != len(self.classes):
            raise ValueError("weight rows must equal the class count")
        if not np.all(np.isfinite(self.weights)):
            raise ValueError("weights must be finite")

    @property
    def n_features(self) -> int:
        return self.weights.shape[1] - 1


@dataclass(frozen=True)
class Prediction:
    label: str
    scores: dict[str, float]


def to_design_matrix(vectors: Sequence[FeatureVector], n_features: int) -> sp.csr_matrix:
    """Stack sparse feature vectors into an N x V CSR matrix."""
    data: list[float] = []
    indices: list[int] = []
    indptr = [0]
    for vector in vectors:
        for index, weight in vector.entries.items():
            if index >= n_features:
                raise ValueError(f"feature index {index} exceeds dimension {n_features}")
            indices.append(index)
            data.append(weight)
        indptr.append(len(indices))
    return sp.csr_matrix(
        (np.array(data), np.array(indices, dtype=np.int64), np.array(indptr, dtype=np.int64)),
        shape=(len(vectors), n_features),
    )


def _softmax(logits: np.ndarray) -> np.ndarray:
    shifted = logits - logits.max(axis=1, keepdims=True)
    exp = np.exp(shifted)
    return exp / exp.sum(axis=1, keepdims=True)


def loss_and_gradient(
    weights: np.ndarray,
    X: np.ndarray | sp.spmatrix,
    y: Sequence[int],
    l2_lambda: float,
) -> tuple[float, np.ndarray]:
    """Mean cross-entropy plus (lambda/2)*||W||^2 (bias excluded), exact gradient.

    X is N x V (dense or sparse), y holds class indices, weights is
    C x (V+1) with the bias in the last column.
    """
    if weights.ndim != 2:
        raise ValueError("weights must be a 2-D matrix")
    n_classes, n_cols = weights.shape
    n_features = n_cols - 1
    if not sp.issparse(X):
        X = np.asarray(X, dtype=np.float64)
        if X.ndim != 2:
            raise ValueError("X must be a 2-D matrix")
    if X.shape[0] == 0:
        raise ValueError("X must hold at least one sample")
    if X.shape[1] != n_features:
        raise ValueError(f"X has {X.shape[1]} features, weights expect {n_features}")
    y = np.asarray(y, dtype=np.int64)
    if X.shape[0] != y.shape[0]:
        raise ValueError("X and y lengths differ")
    if y.size and (y.min() < 0 or y.max() >= n_classes):
        raise ValueError("class index out of range")

    n_samples = X.shape[0]
    w = weights[:, :n_features]
    bias = weights[:, n_features]
    # Divergence shows up as inf/nan in the loss; train() checks for it, so
    # the overflow itself must not warn.
    with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
        logits = X @ w.T + bias
        probs = _softmax(np.asarray(logits))
        log_probs = np.log(probs[np.arange(n_samples), y])
        loss = -float(log_probs.mean()) + 0.5 * l2_lambda * float(np.sum(w * w))

    with np.errstate(over="ignore", invalid="ignore"):
        delta = probs.copy()
        delta[np.arange(n_samples), y] -= 1.0
        delta /= n_samples
        if sp.issparse(X):
            grad_w = np.asarray((X.T @ delta).T)
        else:
            grad_w = delta.T @ X
        grad_w = grad_w + l2_lambda * w
        grad_bias = delta.sum(axis=0)
        gradient = np.hstack([grad_w, grad_bias[:, None]])
    return loss, gradient


def train(
    X: Sequence[FeatureVector],
    y: Sequence[str],
    config: TrainConfig,
    n_features: int | None = None,
) -> LinearClassifier:
    """Seeded-shuffle mini-batch SGD on the regularized softmax objective.

    Classes are stored in lexicographic order. The returned classifier
    carries the per-epoch full-dataset loss in loss_history. Raises
    ValueError on single-class input and TrainingError (naming the epoch)
    if the loss stops being finite.
    """
    if len(X) != len(y):
        raise ValueError("X and y lengths differ")
    if not X:
        raise ValueError("training data is empty")
    classes = tuple(sorted(set(y)))
    if len(classes) < 2:
        raise ValueError("training requires at least two distinct class labels")

    if n_features is None:
        n_features = 1 + max(
            (index for vector in X for index in vector.entries), default=-1
        )
    class_index = {label: index for index, label in enumerate(classes)}
    y_idx = np.array([class_index[label] for label in y], dtype=np.int64)
    design = to_design_matrix(X, n_features)

    n_samples = len(X)
    weights = np.zeros((len(classes), n_features + 1), dtype=np.float64)
    rng = np.random.default_rng(config.seed)
    history: list[float] = []
    for epoch in range(config.epochs):
        order = rng.permutation(n_samples)
        for start in range(0, n_samples, config.batch_size):
            batch = order[start : start + config.batch_size]
            _, gradient = loss_and_gradient(weights, design[batch], y_idx[batch], config.l2_lambda)
            weights -= config.learning_rate * gradient
        epoch_loss, _ = loss_and_gradient(weights, design, y_idx, config.l2_lambda)
        if not np.isfinite(epoch_loss):
            raise TrainingError(f"non-finite training loss at epoch {epoch}")
        history.append(epoch_loss)

    return LinearClassifier(classes=classes, weights=weights, loss_history=tuple(history))


def predict(model: LinearClassifier, x: FeatureVector) -> Prediction:
    """Softmax over Wx + b; argmax ties break toward the lowest class index."""
    n_features = model.n_features
    if x.entries and max(x.entries) >= n_features:
        raise ValueError(f"feature index {max(x.entries)} exceeds model dimension {n_features}")
    logits = model.weights[:, n_features].copy()
    for index, weight in x.entries.items():
        logits += model.weights[:, index] * weight
    scores = _softmax(logits[None, :])[0]
    label = model.classes[int(np.argmax(scores))]
    return Prediction(label=label, scores={cls: float(p) for cls, p in zip(model.classes, scores)})
