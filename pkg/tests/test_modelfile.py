from __future__ import annotations

import json

import numpy as np
import pytest

from juripredict import features, modelio, textproc
from juripredict.model import TrainConfig, predict, train
from juripredict.modelio import (
    ModelChecksumError,
    ModelFileTruncatedError,
    ModelVersionError,
    load_bundle,
    predict_case,
    save_bundle,
)


@pytest.fixture
def trained(tmp_path):
    config = textproc.PreprocessConfig(
        stopwords=frozenset({"de"}), stem_rules=(("al", 4),), strip_accents=True, min_token_length=2
    )
    docs = [
        ["indeniz", "dano", "moral"],
        ["indeniz", "consumidor"],
        ["manutencao", "sentenca"],
        ["manutencao", "improcedencia"],
        ["dano", "indeniz"],
        ["sentenca", "improcedencia"],
    ]
    labels = ["yes", "yes", "no", "no", "yes", "no"]
    tfidf = features.fit(docs, min_df=1, preprocess_config=config)
    vectors = [features.transform(tfidf, doc) for doc in docs]
    train_config = TrainConfig(seed=41, epochs=40)
    classifier = train(vectors, labels, train_config, n_features=len(tfidf.vocabulary))
    path = tmp_path / "model.jurimodel"
    save_bundle(path, classifier, tfidf, labeler_rules_hash="ab" * 32, task="decision",
                train_config=train_config)
    return path, classifier, tfidf, docs


def test_round_trip_reproduces_predictions(trained):
    path, classifier, tfidf, docs = trained
    bundle = load_bundle(path)
    assert bundle.task == "decision"
    assert bundle.classifier.classes == classifier.classes
    assert np.array_equal(bundle.classifier.weights, classifier.weights)
    rng = np.random.default_rng(3)
    terms = tfidf.vocabulary.terms
    for _ in range(100):
        probe = [terms[int(i)] for i in rng.integers(0, len(terms), 3)]
        vector = features.transform(tfidf, probe)
        reloaded = features.transform(bundle.tfidf, probe)
        assert predict(bundle.classifier, reloaded) == predict(classifier, vector)


def test_resave_is_byte_identical(trained, tmp_path):
    path, classifier, tfidf, _ = trained
    other = tmp_path / "again.jurimodel"
    save_bundle(other, classifier, tfidf, labeler_rules_hash="ab" * 32, task="decision",
                train_config=TrainConfig(seed=41, epochs=40))
    assert other.read_bytes() == path.read_bytes()


def test_version_mismatch_is_distinct_error(trained):
    path, *_ = trained
    document = json.loads(path.read_bytes())
    document["version"] = 999
    document["checksum"] = modelio.document_checksum(document)
    path.write_bytes(modelio.canonical_json(document))
    with pytest.raises(ModelVersionError, match="999"):
        load_bundle(path)


def test_wrong_format_tag_is_version_error(trained):
    path, *_ = trained
    document = json.loads(path.read_bytes())
    document["format"] = "somethingelse"
    document["checksum"] = modelio.document_checksum(document)
    path.write_bytes(modelio.canonical_json(document))
    with pytest.raises(ModelVersionError, match="format tag"):
        load_bundle(path)


def test_corrupted_byte_is_checksum_error(trained):
    path, *_ = trained
    raw = bytearray(path.read_bytes())
    # Flip one byte inside the base64 weights payload; the JSON stays valid.
    anchor = raw.find(b'"weights":"') + len(b'"weights":"')
    raw[anchor + 5] = ord("A") if raw[anchor + 5] != ord("A") else ord("B")
    path.write_bytes(bytes(raw))
    with pytest.raises(ModelChecksumError, match="checksum mismatch"):
        load_bundle(path)


def test_truncated_file_is_distinct_error(trained):
    path, *_ = trained
    raw = path.read_bytes()
    path.write_bytes(raw[: len(raw) // 2])
    with pytest.raises(ModelFileTruncatedError):
        load_bundle(path)


def test_missing_field_is_truncation_error(trained):
    path, *_ = trained
    document = json.loads(path.read_bytes())
    del document["idf"]
    document["checksum"] = modelio.document_checksum(document)
    path.write_bytes(modelio.canonical_json(document))
    with pytest.raises(ModelFileTruncatedError, match="missing fields"):
        load_bundle(path)


def test_hash_helpers_are_order_insensitive_where_documented():
    stop_a = modelio.stopwords_hash(frozenset({"a", "b"}))
    stop_b = modelio.stopwords_hash(frozenset({"b", "a"}))
    assert stop_a == stop_b
    rules_hash = modelio.stem_rules_hash((("mente", 4), ("al", 4)))
    assert rules_hash != modelio.stem_rules_hash((("al", 4), ("mente", 4)))


def test_predict_case_flags_all_oov_descriptions(trained, tmp_path):
    path, *_ = trained
    bundle = load_bundle(path)
    response = predict_case(bundle, bundle, "palavras totalmente desconhecidas")
    assert response["oov_flag"] is True
    uniform = 1.0 / len(bundle.classifier.classes)
    for score in response["decision_scores"].values():
        assert score == pytest.approx(uniform)

    known = predict_case(bundle, bundle, "indeniz dano moral")
    assert known["oov_flag"] is False
    assert known["decision_label"] == "yes"
    assert known["preprocessed_token_count"] == 3


def test_predict_case_rejects_empty_description(trained):
    path, *_ = trained
    bundle = load_bundle(path)
    with pytest.raises(ValueError, match="empty description"):
        predict_case(bundle, bundle, "   ")
