from __future__ import annotations

import io

import pytest

from juripredict import corpus as corpus_mod
from juripredict.corpus import (
    Census,
    CorpusError,
    RawDecision,
    dedup_by_description,
    filter_predictive,
    parse_corpus,
    serialize_corpus,
)
from juripredict.labeler import DecisionLabel

from conftest import jsonl_bytes, make_record


def test_parse_single_jsonl_record():
    payload = jsonl_bytes([
        {"id": "1", "description": "Apelação...", "decision_text": "provido", "unanimity_text": "Unanimidade"}
    ])
    parsed = parse_corpus(io.BytesIO(payload), "jsonl")
    assert len(parsed.records) == 1
    record = parsed.records[0]
    assert record.id == "1"
    assert record.unanimity_text == "Unanimidade"
    assert parsed.census.loaded == 1


def test_parse_reports_line_number_for_missing_description():
    payload = jsonl_bytes([
        {"id": "1", "description": "ok", "decision_text": "provido"},
        {"id": "2", "decision_text": "provido"},
    ])
    with pytest.raises(CorpusError, match="line 2") as excinfo:
        parse_corpus(io.BytesIO(payload), "jsonl")
    assert excinfo.value.line == 2
    assert "description" in str(excinfo.value)


def test_parse_reports_line_number_for_bad_json():
    payload = b'{"id": "1", "description": "ok", "decision_text": "provido"}\n{oops\n'
    with pytest.raises(CorpusError, match="line 2"):
        parse_corpus(io.BytesIO(payload), "jsonl")


def test_parse_empty_source_is_an_error():
    with pytest.raises(CorpusError, match="empty corpus"):
        parse_corpus(io.BytesIO(b""), "jsonl")
    with pytest.raises(CorpusError, match="empty corpus"):
        parse_corpus(io.BytesIO(b"\n\n"), "jsonl")


def test_parse_twenty_record_fixture_census():
    rows = [
        {"id": str(i), "description": f"caso numero {i}", "decision_text": "provido"}
        for i in range(20)
    ]
    parsed = parse_corpus(io.BytesIO(jsonl_bytes(rows)), "jsonl")
    assert parsed.census.loaded == 20
    assert [record.id for record in parsed.records] == [str(i) for i in range(20)]


def test_parse_rejects_non_utf8():
    with pytest.raises(CorpusError, match="UTF-8"):
        parse_corpus(io.BytesIO(b"\xff\xfe"), "jsonl")


def test_parse_rejects_unknown_format():
    with pytest.raises(CorpusError, match="unknown corpus format"):
        parse_corpus(io.BytesIO(b"{}"), "xml")


def test_parse_csv_requires_header():
    text = "id,description\n1,apelacao\n"
    with pytest.raises(CorpusError, match="missing columns"):
        parse_corpus(io.BytesIO(text.encode("utf-8")), "csv")


def test_parse_csv_round_trip_with_quotes():
    records = [
        make_record(1, 'Apelação, com "aspas" e vírgulas', unanimity_text=None),
        make_record(2, "Segunda descrição", unanimity_text="Decisão unânime"),
    ]
    payload = serialize_corpus(records, "csv")
    parsed = parse_corpus(io.BytesIO(payload), "csv")
    assert parsed.records == tuple(records)


def test_jsonl_round_trip_identity():
    records = [
        make_record(1, "Primeira descrição"),
        RawDecision(id="2", description="Segunda", decision_text="não provido",
                    unanimity_text=None, judgment_date="2019-04-20"),
    ]
    payload = serialize_corpus(records, "jsonl")
    parsed = parse_corpus(io.BytesIO(payload), "jsonl")
    assert parsed.records == tuple(records)
    assert serialize_corpus(parsed, "jsonl") == payload


def test_record_invariants():
    with pytest.raises(ValueError):
        RawDecision(id="", description="x", decision_text="y")
    with pytest.raises(ValueError):
        RawDecision(id="1", description="   ", decision_text="y")


def _corpus(records: list[RawDecision]) -> corpus_mod.Corpus:
    return corpus_mod.Corpus(records=tuple(records), census=Census(loaded=len(records)))


def test_dedup_removes_byte_identical_descriptions():
    records = [make_record(1, "mesma descrição"), make_record(2, "mesma descrição"), make_record(3, "outra")]
    deduped = dedup_by_description(_corpus(records))
    assert [record.id for record in deduped.records] == ["1", "3"]
    assert deduped.census.loaded == 3
    assert deduped.census.after_dedup == 2


def test_dedup_is_identity_on_unique_corpus():
    records = [make_record(i, f"descrição {i}") for i in range(5)]
    deduped = dedup_by_description(_corpus(records))
    assert deduped.records == tuple(records)
    assert deduped.census.after_dedup == 5


def test_dedup_normalizes_case_and_whitespace():
    records = [make_record(1, "Recurso  Provido"), make_record(2, "recurso provido")]
    deduped = dedup_by_description(_corpus(records))
    assert [record.id for record in deduped.records] == ["1"]


def test_dedup_is_idempotent():
    records = [make_record(1, "a"), make_record(2, "A"), make_record(3, "b")]
    once = dedup_by_description(_corpus(records))
    twice = dedup_by_description(once)
    assert twice.records == once.records
    assert twice.census.after_dedup == once.census.after_dedup


def test_filter_reproduces_reference_dataset_size():
    counts = {
        DecisionLabel.NO: 2415,
        DecisionLabel.PARTIAL: 866,
        DecisionLabel.YES: 762,
        DecisionLabel.PREJUDICADA: 100,
        DecisionLabel.NOT_COGNIZED: 150,
        DecisionLabel.ADMINISTRATIVE: 39,
    }
    labeled = []
    i = 0
    for label, count in counts.items():
        for _ in range(count):
            labeled.append((make_record(i, f"caso {i}"), label))
            i += 1
    census = Census(loaded=len(labeled), after_dedup=len(labeled))
    kept = filter_predictive(labeled, census)
    assert len(kept) == 4043
    assert census.after_filter == 4043
    assert {label for _, label in kept} == {DecisionLabel.YES, DecisionLabel.PARTIAL, DecisionLabel.NO}


def test_filter_only_prejudicada_yields_empty():
    labeled = [(make_record(i, f"caso {i}"), DecisionLabel.PREJUDICADA) for i in range(4)]
    assert filter_predictive(labeled) == []


def test_filter_twenty_record_fixture():
    labels = (
        [DecisionLabel.PREJUDICADA] * 2
        + [DecisionLabel.ADMINISTRATIVE] * 3
        + [DecisionLabel.YES] * 7
        + [DecisionLabel.NO] * 8
    )
    labeled = [(make_record(i, f"caso {i}"), label) for i, label in enumerate(labels)]
    assert len(filter_predictive(labeled)) == 15


def test_census_stages_are_monotonic():
    records = [make_record(1, "a"), make_record(2, "a"), make_record(3, "b"), make_record(4, "c")]
    deduped = dedup_by_description(_corpus(records))
    labeled = [(record, DecisionLabel.PREJUDICADA if record.id == "4" else DecisionLabel.YES)
               for record in deduped.records]
    filter_predictive(labeled, deduped.census)
    census = deduped.census
    assert census.loaded >= census.after_dedup >= census.after_filter
