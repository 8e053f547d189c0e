"""Evaluation protocols: stratified k-fold CV, F1 with variance, rebalancing.

Cross-validation refits TF-IDF inside every fold so held-out documents never
influence the vocabulary, idf weights, or classifier (strict no-leakage
stance). Fold variance is the population variance across fold scores.
Weighted F1 is the default single-number score; macro is always reported
alongside it.
"""

from __future__ import annotations

import hashlib
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping, Sequence, TypeVar

import numpy as np

from . import features, model
from .model import TrainConfig
from .textproc import PreprocessConfig, preprocess

T = TypeVar("T")

REPORT_FORMAT_TAG = "jurireport"
REPORT_FORMAT_VERSION = 1

# Scores published for the original (private) Tribunal de Justiça de Alagoas
# corpus; not reproducible here, recorded in reports for orientation only.
REFERENCE_BASELINES = {
    "decision_full": {"n": 4043, "f1": 0.7899, "variance": 1.7e-05},
    "decision_balanced": {"n": 2494, "f1": 0.7407, "variance": 0.00029},
    "unanimity_full": {"n": 2274, "f1": 0.9846, "variance": 3.1e-05},
    "unanimity_balanced": {"n": 90, "f1": 0.7694, "variance": 0.015},
}


@dataclass(frozen=True)
class FoldAssignment:
    """Per-sample fold index; folds partition the data."""

    fold_of: tuple[int, ...]
    k: int

    def fold_indices(self, fold: int) -> list[int]:
        return [i for i, f in enumerate(self.fold_of) if f == fold]

    def train_indices(self, fold: int) -> list[int]:
        return [i for i, f in enumerate(self.fold_of) if f != fold]


def stratified_kfold(labels: Sequence[str], k: int, seed: int) -> FoldAssignment:
    """Seeded shuffle within each class, then deal round-robin to folds.

    Every class must have at least k samples; per-class counts across folds
    then differ by at most one.
    """
    if k < 2:
        raise ValueError("k must be >= 2")
    counts = Counter(labels)
    for label in dict.fromkeys(labels):
        if counts[label] < k:
            raise ValueError(f"class {label!r} has {counts[label]} samples, fewer than k={k}")

    rng = np.random.default_rng(seed)
    fold_of = [0] * len(labels)
    by_class: dict[str, list[int]] = {}
    for index, label in enumerate(labels):
        by_class.setdefault(label, []).append(index)
    for label, indices in by_class.items():
        order = rng.permutation(len(indices))
        for position, which in enumerate(order):
            fold_of[indices[which]] = position % k
    return FoldAssignment(fold_of=tuple(fold_of), k=k)


@dataclass(frozen=True)
class ConfusionMatrix:
    """Rows are true classes, columns predicted; entries are counts."""

    classes: tuple[str, ...]
    counts: tuple[tuple[int, ...], ...]

    @classmethod
    def from_predictions(
        cls, y_true: Sequence[str], y_pred: Sequence[str], classes: Sequence[str]
    ) -> "ConfusionMatrix":
        index = {label: i for i, label in enumerate(classes)}
        matrix = [[0] * len(classes) for _ in classes]
        for truth, predicted in zip(y_true, y_pred, strict=True):
            matrix[index[truth]][index[predicted]] += 1
        return cls(classes=tuple(classes), counts=tuple(tuple(row) for row in matrix))

    @property
    def total(self) -> int:
        return sum(sum(row) for row in self.counts)

    def as_dict(self) -> dict:
        return {"classes": list(self.classes), "counts": [list(row) for row in self.counts]}


def f1_score(cm: ConfusionMatrix, averaging: str = "weighted") -> float:
    """Per-class F1 = 2PR/(P+R), with 0 whenever P+R is 0.

    "weighted" averages by true-class support; "macro" averages uniformly
    over classes.
    """
    if averaging not in ("weighted", "macro"):
        raise ValueError(f"unknown averaging {averaging!r}")
    total = cm.total
    if total == 0:
        raise ValueError("confusion matrix is empty")
    n = len(cm.classes)
    f1s = []
    supports = []
    for c in range(n):
        tp = cm.counts[c][c]
        support = sum(cm.counts[c])
        predicted = sum(cm.counts[r][c] for r in range(n))
        precision = tp / predicted if predicted else 0.0
        recall = tp / support if support else 0.0
        f1 = 2 * precision * recall / (precision + recall) if precision + recall else 0.0
        f1s.append(f1)
        supports.append(support)
    if averaging == "macro":
        return float(sum(f1s) / n)
    return float(sum(f1 * s for f1, s in zip(f1s, supports)) / total)


def undersample_to_balance(
    items: Sequence[T],
    labels: Sequence[str],
    target: Mapping[str, int],
    seed: int,
) -> tuple[list[T], list[str]]:
    """Seeded uniform downsample of each targeted label to its target count.

    Non-targeted labels keep every sample; input order is preserved. Target
    labels are processed in sorted order so equal mappings draw identically.
    """
    if len(items) != len(labels):
        raise ValueError("items and labels lengths differ")
    counts = Counter(labels)
    for label, wanted in target.items():
        if wanted > counts[label]:
            raise ValueError(
                f"target {wanted} for label {label!r} exceeds available {counts[label]}"
            )
        if wanted < 0:
            raise ValueError(f"target for label {label!r} must be >= 0")

    rng = np.random.default_rng(seed)
    keep: set[int] = {i for i, label in enumerate(labels) if label not in target}
    for label in sorted(target):
        candidates = [i for i, lab in enumerate(labels) if lab == label]
        chosen = rng.choice(len(candidates), size=target[label], replace=False)
        keep.update(candidates[i] for i in chosen)
    kept = sorted(keep)
    return [items[i] for i in kept], [labels[i] for i in kept]


def holdout_split(
    labels: Sequence[str],
    train_fraction: float = 0.8,
    stratified: bool = True,
    seed: int = 0,
) -> tuple[list[int], list[int]]:
    """Seeded split into (train indices, test indices), stratified by default.

    |train| = round(train_fraction * N); per-class sizes use floor then
    distribute the remainder by largest fractional part (ties by class
    first appearance).
    """
    if not 0 < train_fraction < 1:
        raise ValueError("train_fraction must be strictly between 0 and 1")
    n = len(labels)
    if n < 2:
        raise ValueError("need at least two samples to split")
    total_train = int(np.floor(train_fraction * n + 0.5))
    rng = np.random.default_rng(seed)

    if not stratified:
        order = rng.permutation(n)
        train = sorted(int(i) for i in order[:total_train])
        test = sorted(int(i) for i in order[total_train:])
        return train, test

    by_class: dict[str, list[int]] = {}
    for index, label in enumerate(labels):
        by_class.setdefault(label, []).append(index)
    for label, indices in by_class.items():
        if len(indices) < 2:
            raise ValueError(f"class {label!r} has fewer than 2 samples; cannot split")

    floors = {label: int(np.floor(train_fraction * len(idx))) for label, idx in by_class.items()}
    remainders = {
        label: train_fraction * len(idx) - floors[label] for label, idx in by_class.items()
    }
    leftover = total_train - sum(floors.values())
    # Largest fractional remainder first; dict order (first appearance) breaks ties.
    for label in sorted(by_class, key=lambda lab: -remainders[lab])[:leftover]:
        floors[label] += 1

    train: list[int] = []
    test: list[int] = []
    for label, indices in by_class.items():
        order = rng.permutation(len(indices))
        chosen = {indices[i] for i in order[: floors[label]]}
        train.extend(chosen)
        test.extend(set(indices) - chosen)
    return sorted(train), sorted(test)


@dataclass(frozen=True)
class PipelineConfig:
    """Everything a fold needs: preprocessing, vectorizer pruning, training."""

    preprocess: PreprocessConfig
    train: TrainConfig
    min_df: int = features.DEFAULT_MIN_DF
    averaging: str = "weighted"

    def as_dict(self) -> dict:
        return {
            "min_df": self.min_df,
            "averaging": self.averaging,
            "strip_accents": self.preprocess.strip_accents,
            "min_token_length": self.preprocess.min_token_length,
            "n_stopwords": len(self.preprocess.stopwords),
            "n_stem_rules": len(self.preprocess.stem_rules),
            "train": self.train.as_dict(),
        }


@dataclass(frozen=True)
class EvaluationReport:
    """Cross-validation outcome: fold scores, aggregates, and provenance."""

    per_fold_f1: tuple[float, ...]
    per_fold_f1_macro: tuple[float, ...]
    mean_f1: float
    variance: float
    mean_f1_macro: float
    variance_macro: float
    confusions: tuple[ConfusionMatrix, ...]
    census: dict[str, int]
    k: int
    seed: int
    config: dict
    fold_assignment: tuple[int, ...]
    fold_vocab_hashes: tuple[str, ...]

    def as_dict(self) -> dict:
        return {
            "format": REPORT_FORMAT_TAG,
            "version": REPORT_FORMAT_VERSION,
            "per_fold_f1": list(self.per_fold_f1),
            "per_fold_f1_macro": list(self.per_fold_f1_macro),
            "mean_f1": self.mean_f1,
            "variance": self.variance,
            "mean_f1_macro": self.mean_f1_macro,
            "variance_macro": self.variance_macro,
            "confusions": [cm.as_dict() for cm in self.confusions],
            "census": dict(self.census),
            "k": self.k,
            "seed": self.seed,
            "config": self.config,
            "fold_assignment": list(self.fold_assignment),
            "fold_vocab_hashes": list(self.fold_vocab_hashes),
            "reference_baselines": REFERENCE_BASELINES,
        }

    def save(self, path: str | Path) -> None:
        from .modelio import write_checksummed

        write_checksummed(path, self.as_dict())

    def render_table(self) -> str:
        lines = [
            f"{'fold':>4}  {'F1 (weighted)':>14}  {'F1 (macro)':>11}",
        ]
        for fold, (w, m) in enumerate(zip(self.per_fold_f1, self.per_fold_f1_macro)):
            lines.append(f"{fold:>4}  {w:>14.4f}  {m:>11.4f}")
        lines.append(
            f"mean  {self.mean_f1:>14.4f}  {self.mean_f1_macro:>11.4f}"
            f"   (variance {self.variance:.6g} / {self.variance_macro:.6g})"
        )
        census = ", ".join(f"{label}={count}" for label, count in sorted(self.census.items()))
        lines.append(f"dataset: {census}  (k={self.k}, seed={self.seed})")
        return "\n".join(lines)


def vocabulary_hash(terms: Sequence[str]) -> str:
    return hashlib.sha256("\n".join(terms).encode("utf-8")).hexdigest()


def cross_validate(
    documents: Sequence[str],
    labels: Sequence[str],
    config: PipelineConfig,
    k: int,
    seed: int,
) -> EvaluationReport:
    """Stratified k-fold CV with per-fold TF-IDF refit and training.

    Each fold's vectorizer and classifier see only the other k-1 folds; the
    held-out fold contributes predictions only. Per-fold vocabulary hashes
    are recorded so leakage is independently checkable.
    """
    if len(documents) != len(labels):
        raise ValueError("documents and labels lengths differ")
    token_seqs = [preprocess(document, config.preprocess) for document in documents]
    assignment = stratified_kfold(labels, k, seed)
    classes = sorted(set(labels))

    per_fold_w: list[float] = []
    per_fold_m: list[float] = []
    confusions: list[ConfusionMatrix] = []
    vocab_hashes: list[str] = []
    for fold in range(k):
        train_idx = assignment.train_indices(fold)
        test_idx = assignment.fold_indices(fold)
        tfidf = features.fit(
            [token_seqs[i] for i in train_idx],
            min_df=config.min_df,
            preprocess_config=config.preprocess,
        )
        vocab_hashes.append(vocabulary_hash(tfidf.vocabulary.terms))
        X_train = [features.transform(tfidf, token_seqs[i]) for i in train_idx]
        y_train = [labels[i] for i in train_idx]
        classifier = model.train(X_train, y_train, config.train, n_features=len(tfidf.vocabulary))

        y_pred = [
            model.predict(classifier, features.transform(tfidf, token_seqs[i])).label
            for i in test_idx
        ]
        cm = ConfusionMatrix.from_predictions([labels[i] for i in test_idx], y_pred, classes)
        confusions.append(cm)
        per_fold_w.append(f1_score(cm, "weighted"))
        per_fold_m.append(f1_score(cm, "macro"))

    mean_w = float(np.mean(per_fold_w))
    var_w = float(np.var(per_fold_w))
    mean_m = float(np.mean(per_fold_m))
    var_m = float(np.var(per_fold_m))
    return EvaluationReport(
        per_fold_f1=tuple(per_fold_w),
        per_fold_f1_macro=tuple(per_fold_m),
        mean_f1=mean_w,
        variance=var_w,
        mean_f1_macro=mean_m,
        variance_macro=var_m,
        confusions=tuple(confusions),
        census=dict(sorted(Counter(labels).items())),
        k=k,
        seed=seed,
        config=config.as_dict(),
        fold_assignment=assignment.fold_of,
        fold_vocab_hashes=tuple(vocab_hashes),
    )
