"""Vocabulary building and L2-normalized TF-IDF vectors.

tf is the raw in-document term count; idf uses the smoothed variant
ln((1 + N) / (1 + df)) + 1, which keeps corpus-wide terms above zero and
floors at 1.0. Vocabulary indices follow first appearance across the
fitting corpus, so fits are deterministic without sorting.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .textproc import PreprocessConfig, TokenSequence

DEFAULT_MIN_DF = 2


@dataclass(frozen=True)
class Vocabulary:
    term_to_index: dict[str, int]
    document_frequency: tuple[int, ...]
    n_documents: int

    def __len__(self) -> int:
        return len(self.term_to_index)

    @property
    def terms(self) -> list[str]:
        """Terms in index order."""
        ordered = [""] * len(self.term_to_index)
        for term, index in self.term_to_index.items():
            ordered[index] = term
        return ordered


@dataclass(frozen=True)
class TfidfModel:
    vocabulary: Vocabulary
    idf: np.ndarray
    min_df: int
    preprocess_config: PreprocessConfig | None = None

    def __post_init__(self) -> None:
        if len(self.idf) != len(self.vocabulary):
            raise ValueError("idf length must equal vocabulary size")


@dataclass(frozen=True)
class FeatureVector:
    """Sparse index -> weight mapping; L2 norm 1 unless all-zero."""

    entries: dict[int, float]

    @property
    def is_zero(self) -> bool:
        return not self.entries

    def norm(self) -> float:
        return math.sqrt(sum(weight * weight for weight in self.entries.values()))


def fit(
    documents: Sequence[TokenSequence],
    min_df: int = DEFAULT_MIN_DF,
    preprocess_config: PreprocessConfig | None = None,
) -> TfidfModel:
    """Build the vocabulary over preprocessed documents and compute idf weights.

    The vocabulary holds exactly the terms appearing in at least min_df
    documents, indexed in first-appearance order.
    """
    if not documents:
        raise ValueError("cannot fit TF-IDF on an empty document list")
    if min_df < 1:
        raise ValueError("min_df must be >= 1")

    n_documents = len(documents)
    df: dict[str, int] = {}
    first_seen: list[str] = []
    for document in documents:
        for term in dict.fromkeys(document):
            if term not in df:
                df[term] = 0
                first_seen.append(term)
            df[term] += 1

    kept = [term for term in first_seen if df[term] >= min_df]
    if not kept:
        raise ValueError(f"vocabulary is empty after min_df={min_df} pruning")

    term_to_index = {term: index for index, term in enumerate(kept)}
    document_frequency = tuple(df[term] for term in kept)
    idf = np.array(
        [math.log((1.0 + n_documents) / (1.0 + df_t)) + 1.0 for df_t in document_frequency],
        dtype=np.float64,
    )
    vocabulary = Vocabulary(
        term_to_index=term_to_index,
        document_frequency=document_frequency,
        n_documents=n_documents,
    )
    return TfidfModel(vocabulary=vocabulary, idf=idf, min_df=min_df, preprocess_config=preprocess_config)


def transform(model: TfidfModel, document: TokenSequence) -> FeatureVector:
    """count(t) * idf(t) for in-vocabulary terms, then L2 normalization.

    Out-of-vocabulary terms are ignored; a document with no in-vocabulary
    terms yields the (legal) zero vector, visible via FeatureVector.is_zero.
    """
    term_to_index = model.vocabulary.term_to_index
    counts = Counter(term for term in document if term in term_to_index)
    if not counts:
        return FeatureVector(entries={})
    entries = {
        term_to_index[term]: count * float(model.idf[term_to_index[term]])
        for term, count in counts.items()
    }
    norm = math.sqrt(sum(weight * weight for weight in entries.values()))
    return FeatureVector(entries={index: weight / norm for index, weight in sorted(entries.items())})
