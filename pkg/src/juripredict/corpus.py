"""Decision-record ingestion: parse JSONL/CSV, deduplicate, filter.

Deduplication keeps the first occurrence of each normalized (lowercased,
whitespace-collapsed) description. The census tracks record counts per
pipeline stage so dataset arithmetic stays auditable.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field, replace
from typing import BinaryIO, Iterable, Sequence, TYPE_CHECKING

if TYPE_CHECKING:
    from .labeler import DecisionLabel

JSONL = "jsonl"
CSV = "csv"
FORMATS = (JSONL, CSV)

_CSV_COLUMNS = ("id", "description", "decision_text", "unanimity_text", "judgment_date")


class CorpusError(ValueError):
    """Malformed or empty corpus input; carries the offending line when known."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


@dataclass(frozen=True)
class RawDecision:
    """One court record: case summary, dispositive text, unanimity text."""

    id: str
    description: str
    decision_text: str
    unanimity_text: str | None = None
    judgment_date: str | None = None

    def __post_init__(self) -> None:
        if not self.id:
            raise ValueError("record id must be nonempty")
        if not self.description.strip():
            raise ValueError("record description must be nonempty")


@dataclass
class Census:
    """Record counts per pipeline stage; stages are non-increasing."""

    loaded: int = 0
    after_dedup: int | None = None
    after_filter: int | None = None

    def as_dict(self) -> dict[str, int | None]:
        return {
            "loaded": self.loaded,
            "after_dedup": self.after_dedup,
            "after_filter": self.after_filter,
        }


@dataclass(frozen=True)
class Corpus:
    records: tuple[RawDecision, ...]
    census: Census


def normalize_description(description: str) -> str:
    """Lowercase and collapse whitespace; duplicate detection key."""
    return " ".join(description.lower().split())


def parse_corpus(source: BinaryIO | bytes, format: str) -> Corpus:
    """Parse a byte stream of decision records in the declared format.

    Raises CorpusError with a line number for malformed records, and
    "empty corpus" when the source holds no records at all.
    """
    if format not in FORMATS:
        raise CorpusError(f"unknown corpus format {format!r}; expected one of {FORMATS}")
    data = source if isinstance(source, bytes) else source.read()
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise CorpusError(f"source is not valid UTF-8: {exc}") from exc

    if format == JSONL:
        records = _parse_jsonl(text)
    else:
        records = _parse_csv(text)
    if not records:
        raise CorpusError("empty corpus")
    return Corpus(records=tuple(records), census=Census(loaded=len(records)))


def _record_from_mapping(payload: dict, line: int) -> RawDecision:
    for key in ("id", "description", "decision_text"):
        if not payload.get(key):
            raise CorpusError(f"missing required field {key!r}", line=line)
    unknown = set(payload) - set(_CSV_COLUMNS)
    if unknown:
        raise CorpusError(f"unknown fields {sorted(unknown)}", line=line)
    try:
        return RawDecision(
            id=str(payload["id"]),
            description=str(payload["description"]),
            decision_text=str(payload["decision_text"]),
            unanimity_text=payload.get("unanimity_text") or None,
            judgment_date=payload.get("judgment_date") or None,
        )
    except ValueError as exc:
        raise CorpusError(str(exc), line=line) from exc


def _parse_jsonl(text: str) -> list[RawDecision]:
    records = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        try:
            payload = json.loads(line)
        except json.JSONDecodeError as exc:
            raise CorpusError(f"invalid JSON: {exc.msg}", line=lineno) from exc
        if not isinstance(payload, dict):
            raise CorpusError("record is not a JSON object", line=lineno)
        records.append(_record_from_mapping(payload, lineno))
    return records


def _parse_csv(text: str) -> list[RawDecision]:
    reader = csv.DictReader(io.StringIO(text))
    if reader.fieldnames is None:
        return []
    missing = {"id", "description", "decision_text"} - set(reader.fieldnames)
    if missing:
        raise CorpusError(f"header is missing columns {sorted(missing)}", line=1)
    unknown = set(reader.fieldnames) - set(_CSV_COLUMNS)
    if unknown:
        raise CorpusError(f"header has unknown columns {sorted(unknown)}", line=1)
    records = []
    for row in reader:
        if None in row.values() or None in row:
            raise CorpusError("row width does not match header", line=reader.line_num)
        records.append(_record_from_mapping({k: v for k, v in row.items() if v != ""}, reader.line_num))
    return records


def serialize_corpus(corpus_or_records: Corpus | Sequence[RawDecision], format: str) -> bytes:
    """Inverse of parse_corpus; parse(serialize(c)) yields identical records."""
    if format not in FORMATS:
        raise CorpusError(f"unknown corpus format {format!r}; expected one of {FORMATS}")
    records = (
        corpus_or_records.records
        if isinstance(corpus_or_records, Corpus)
        else tuple(corpus_or_records)
    )
    if format == JSONL:
        lines = []
        for record in records:
            payload = {"id": record.id, "description": record.description, "decision_text": record.decision_text}
            if record.unanimity_text is not None:
                payload["unanimity_text"] = record.unanimity_text
            if record.judgment_date is not None:
                payload["judgment_date"] = record.judgment_date
            lines.append(json.dumps(payload, ensure_ascii=False))
        return ("\n".join(lines) + "\n").encode("utf-8")

    buffer = io.StringIO()
    writer = csv.writer(buffer, quoting=csv.QUOTE_MINIMAL)
    writer.writerow(_CSV_COLUMNS)
    for record in records:
        writer.writerow(
            [record.id, record.description, record.decision_text,
             record.unanimity_text or "", record.judgment_date or ""]
        )
    return buffer.getvalue().encode("utf-8")


def dedup_by_description(corpus: Corpus) -> Corpus:
    """Keep the first record for each normalized description, preserving order."""
    seen: set[str] = set()
    kept = []
    for record in corpus.records:
        key = normalize_description(record.description)
        if key in seen:
            continue
        seen.add(key)
        kept.append(record)
    census = replace(corpus.census, after_dedup=len(kept))
    return Corpus(records=tuple(kept), census=census)


def filter_predictive(
    labeled: Sequence[tuple[RawDecision, "DecisionLabel"]],
    census: Census | None = None,
) -> list[tuple[RawDecision, "DecisionLabel"]]:
    """Drop labels useless for prediction (moot, not cognized, administrative)."""
    from .labeler import PREDICTIVE_LABELS

    kept = [(record, label) for record, label in labeled if label in PREDICTIVE_LABELS]
    if census is not None:
        census.after_filter = len(kept)
    return kept
