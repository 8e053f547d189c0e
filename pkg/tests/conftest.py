from __future__ import annotations

import json

import pytest

from juripredict import corpus as corpus_mod
from juripredict.features import FeatureVector
from juripredict.model import TrainConfig
from juripredict.textproc import PreprocessConfig


@pytest.fixture
def passthrough_config() -> PreprocessConfig:
    """No stop words, no stemming, keep everything length >= 1."""
    return PreprocessConfig(stopwords=frozenset(), stem_rules=(), strip_accents=False, min_token_length=1)


def make_record(i: int, description: str, decision_text: str = "Recurso conhecido e provido",
                unanimity_text: str | None = "Unanimidade") -> corpus_mod.RawDecision:
    return corpus_mod.RawDecision(
        id=str(i), description=description, decision_text=decision_text, unanimity_text=unanimity_text
    )


def jsonl_bytes(rows: list[dict]) -> bytes:
    return ("\n".join(json.dumps(row, ensure_ascii=False) for row in rows) + "\n").encode("utf-8")


@pytest.fixture
def separable_fixture() -> tuple[list[FeatureVector], list[str], TrainConfig]:
    """Two one-feature clusters a classifier must separate confidently."""
    X = [FeatureVector(entries={0: 1.0}) for _ in range(8)]
    X += [FeatureVector(entries={1: 1.0}) for _ in range(8)]
    y = ["alpha"] * 8 + ["beta"] * 8
    return X, y, TrainConfig(seed=123, epochs=200, learning_rate=0.5)
