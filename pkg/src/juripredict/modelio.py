"""Versioned, checksummed model files ("jurimodel") and the shared predict path.

A model file is a single UTF-8 JSON document: format tag, version,
preprocessing config (stop words and stem rules embedded in full so
prediction is self-contained), provenance hashes, vocabulary, idf and weight
arrays as base64 little-endian float64, class names, training config, and a
whole-document sha256 checksum. Serialization is canonical (sorted keys,
fixed separators), so identical content gives identical bytes.
"""

from __future__ import annotations

import base64
import hashlib
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from .features import FeatureVector, TfidfModel, Vocabulary, transform
from .model import LinearClassifier, Prediction, TrainConfig, predict
from .textproc import PreprocessConfig, preprocess

FORMAT_TAG = "jurimodel"
FORMAT_VERSION = 1


class ModelFileError(Exception):
    """Base for model-file load failures."""


class ModelFileTruncatedError(ModelFileError):
    """File is not a complete jurimodel document."""


class ModelVersionError(ModelFileError):
    """File declares an unsupported format tag or version."""


class ModelChecksumError(ModelFileError):
    """Stored checksum does not match the document content."""


def canonical_json(document: dict) -> bytes:
    return json.dumps(document, sort_keys=True, ensure_ascii=False, separators=(",", ":")).encode("utf-8")


def document_checksum(document: dict) -> str:
    """sha256 over the canonical document with its checksum field removed."""
    body = {key: value for key, value in document.items() if key != "checksum"}
    return "sha256:" + hashlib.sha256(canonical_json(body)).hexdigest()


def write_checksummed(path: str | Path, document: dict) -> None:
    document = dict(document)
    document["checksum"] = document_checksum(document)
    Path(path).write_bytes(canonical_json(document) + b"\n")


def read_checksummed(path: str | Path) -> dict:
    raw = Path(path).read_bytes()
    try:
        document = json.loads(raw.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise ModelFileTruncatedError(f"{path}: not a complete document: {exc}") from exc
    if not isinstance(document, dict) or "checksum" not in document:
        raise ModelFileTruncatedError(f"{path}: document has no checksum field")
    expected = document_checksum(document)
    if document["checksum"] != expected:
        raise ModelChecksumError(f"{path}: checksum mismatch (stored {document['checksum']}, computed {expected})")
    return document


def encode_floats(array: np.ndarray) -> str:
    """Row-major little-endian float64, base64-encoded."""
    return base64.b64encode(np.ascontiguousarray(array, dtype="<f8").tobytes()).decode("ascii")


def decode_floats(encoded: str, expected_size: int, origin: str) -> np.ndarray:
    try:
        raw = base64.b64decode(encoded.encode("ascii"), validate=True)
    except Exception as exc:
        raise ModelFileTruncatedError(f"{origin}: undecodable float array: {exc}") from exc
    array = np.frombuffer(raw, dtype="<f8")
    if array.size != expected_size:
        raise ModelFileTruncatedError(f"{origin}: float array has {array.size} values, expected {expected_size}")
    return array.astype(np.float64)


def stopwords_hash(stopwords: frozenset[str]) -> str:
    return hashlib.sha256("\n".join(sorted(stopwords)).encode("utf-8")).hexdigest()


def stem_rules_hash(stem_rules: Sequence[tuple[str, int]]) -> str:
    lines = [f"{suffix}\t{min_stem}" for suffix, min_stem in stem_rules]
    return hashlib.sha256("\n".join(lines).encode("utf-8")).hexdigest()


@dataclass(frozen=True)
class ModelBundle:
    """A loaded model file: vectorizer, classifier, and provenance metadata."""

    tfidf: TfidfModel
    classifier: LinearClassifier
    task: str
    train_config: dict
    labeler_rules_hash: str
    file_sha256: str
    path: str


def save_bundle(
    path: str | Path,
    classifier: LinearClassifier,
    tfidf: TfidfModel,
    labeler_rules_hash: str,
    task: str,
    train_config: TrainConfig | None = None,
) -> None:
    """Write a self-describing jurimodel file; load_bundle is its inverse."""
    config = tfidf.preprocess_config
    if config is None:
        raise ValueError("tfidf model must carry its preprocess config to be saved")
    n_classes = len(classifier.classes)
    n_cols = classifier.weights.shape[1]
    if n_cols != len(tfidf.vocabulary) + 1:
        raise ValueError("classifier width does not match vocabulary size plus bias")
    document = {
        "format": FORMAT_TAG,
        "version": FORMAT_VERSION,
        "task": task,
        "preprocess": {
            "stopwords": sorted(config.stopwords),
            "stem_rules": [[suffix, min_stem] for suffix, min_stem in config.stem_rules],
            "strip_accents": config.strip_accents,
            "min_token_length": config.min_token_length,
        },
        "stopwords_sha256": stopwords_hash(config.stopwords),
        "stem_rules_sha256": stem_rules_hash(config.stem_rules),
        "labeler_rules_sha256": labeler_rules_hash,
        "min_df": tfidf.min_df,
        "vocabulary": tfidf.vocabulary.terms,
        "document_frequency": list(tfidf.vocabulary.document_frequency),
        "n_documents": tfidf.vocabulary.n_documents,
        "idf": encode_floats(tfidf.idf),
        "classes": list(classifier.classes),
        "weights": encode_floats(classifier.weights),
        "train_config": train_config.as_dict() if train_config else None,
    }
    write_checksummed(path, document)


_REQUIRED_KEYS = (
    "format", "version", "task", "preprocess", "stopwords_sha256", "stem_rules_sha256",
    "labeler_rules_sha256", "min_df", "vocabulary", "document_frequency", "n_documents",
    "idf", "classes", "weights", "train_config",
)


def load_bundle(path: str | Path) -> ModelBundle:
    """Load and verify a jurimodel file.

    Raises ModelFileTruncatedError / ModelVersionError / ModelChecksumError
    for incomplete files, unsupported versions, and corrupted content.
    """
    path = Path(path)
    document = read_checksummed(path)
    missing = [key for key in _REQUIRED_KEYS if key not in document]
    if missing:
        raise ModelFileTruncatedError(f"{path}: missing fields {missing}")
    if document["format"] != FORMAT_TAG:
        raise ModelVersionError(f"{path}: format tag {document['format']!r} is not {FORMAT_TAG!r}")
    if document["version"] != FORMAT_VERSION:
        raise ModelVersionError(
            f"{path}: unsupported version {document['version']} (supported: {FORMAT_VERSION})"
        )

    pre = document["preprocess"]
    config = PreprocessConfig(
        stopwords=frozenset(pre["stopwords"]),
        stem_rules=tuple((suffix, int(min_stem)) for suffix, min_stem in pre["stem_rules"]),
        strip_accents=bool(pre["strip_accents"]),
        min_token_length=int(pre["min_token_length"]),
    )
    terms = list(document["vocabulary"])
    vocabulary = Vocabulary(
        term_to_index={term: index for index, term in enumerate(terms)},
        document_frequency=tuple(int(df) for df in document["document_frequency"]),
        n_documents=int(document["n_documents"]),
    )
    idf = decode_floats(document["idf"], len(terms), str(path))
    tfidf = TfidfModel(vocabulary=vocabulary, idf=idf, min_df=int(document["min_df"]), preprocess_config=config)

    classes = tuple(document["classes"])
    weights = decode_floats(
        document["weights"], len(classes) * (len(terms) + 1), str(path)
    ).reshape(len(classes), len(terms) + 1)
    classifier = LinearClassifier(classes=classes, weights=weights)

    return ModelBundle(
        tfidf=tfidf,
        classifier=classifier,
        task=str(document["task"]),
        train_config=document["train_config"] or {},
        labeler_rules_hash=str(document["labeler_rules_sha256"]),
        file_sha256=hashlib.sha256(path.read_bytes()).hexdigest(),
        path=str(path),
    )


def predict_vector(bundle: ModelBundle, vector: FeatureVector) -> Prediction:
    """predict() with the zero-vector convention: no evidence means uniform scores.

    A description with no in-vocabulary terms carries no information, so the
    shared prediction path reports uniform class probabilities instead of the
    bias-only softmax.
    """
    if vector.is_zero:
        uniform = 1.0 / len(bundle.classifier.classes)
        return Prediction(
            label=bundle.classifier.classes[0],
            scores={cls: uniform for cls in bundle.classifier.classes},
        )
    return predict(bundle.classifier, vector)


def predict_case(decision: ModelBundle, unanimity: ModelBundle, description: str) -> dict:
    """Single prediction path shared by the CLI and the HTTP service."""
    if not description or not description.strip():
        raise ValueError("empty description")
    decision_tokens = preprocess(description, decision.tfidf.preprocess_config)
    unanimity_tokens = preprocess(description, unanimity.tfidf.preprocess_config)
    decision_vector = transform(decision.tfidf, decision_tokens)
    unanimity_vector = transform(unanimity.tfidf, unanimity_tokens)
    decision_pred = predict_vector(decision, decision_vector)
    unanimity_pred = predict_vector(unanimity, unanimity_vector)
    return {
        "decision_label": decision_pred.label,
        "decision_scores": decision_pred.scores,
        "unanimity_label": unanimity_pred.label,
        "unanimity_scores": unanimity_pred.scores,
        "preprocessed_token_count": len(decision_tokens),
        "oov_flag": decision_vector.is_zero or unanimity_vector.is_zero,
    }
