from __future__ import annotations

import pytest

from juripredict.corpus import Census, Corpus
from juripredict.labeler import (
    DEFAULT_DECISION_RULES,
    DEFAULT_UNANIMITY_RULES,
    DecisionLabel,
    LabelRule,
    UnanimityLabel,
    build_labeled_dataset,
    label_decision,
    label_unanimity,
    load_rules,
    ruleset_hash,
)

from conftest import make_record


# The three canonical dispositive phrasings and their labels.
TABLE_ROWS = [
    ("Recurso conhecido e provido", DecisionLabel.YES),
    ("Recurso conhecido e parcialmente provido", DecisionLabel.PARTIAL),
    ("Recurso conhecido e não provido", DecisionLabel.NO),
]


@pytest.mark.parametrize("text,expected", TABLE_ROWS)
def test_default_rules_reproduce_canonical_rows(text, expected):
    assert label_decision(text, DEFAULT_DECISION_RULES) is expected


def test_no_match_is_absent_not_an_error():
    assert label_decision("lorem ipsum", DEFAULT_DECISION_RULES) is None


def test_decision_rules_cover_non_predictive_labels():
    assert label_decision("Recurso não conhecido", DEFAULT_DECISION_RULES) is DecisionLabel.NOT_COGNIZED
    assert label_decision("Apelação prejudicada", DEFAULT_DECISION_RULES) is DecisionLabel.PREJUDICADA
    assert label_decision("Conflito de competência", DEFAULT_DECISION_RULES) is DecisionLabel.ADMINISTRATIVE
    assert label_decision("Negou provimento ao recurso", DEFAULT_DECISION_RULES) is DecisionLabel.NO


def test_matching_folds_case_and_accents():
    assert label_decision("RECURSO NAO PROVIDO", DEFAULT_DECISION_RULES) is DecisionLabel.NO
    assert label_decision("recurso não provido", DEFAULT_DECISION_RULES) is DecisionLabel.NO


@pytest.mark.parametrize(
    "text",
    [
        "parcialmente provido",
        "Recurso conhecido e parcialmente provido por unanimidade",
        "Dá-se parcialmente provido o apelo",
    ],
)
def test_partial_never_shadowed_by_yes(text):
    assert label_decision(text, DEFAULT_DECISION_RULES) is DecisionLabel.PARTIAL


def test_unanimity_phrasings():
    assert label_unanimity("Unanimidade", DEFAULT_UNANIMITY_RULES) is UnanimityLabel.UNANIMITY
    assert label_unanimity("Decisão unânime", DEFAULT_UNANIMITY_RULES) is UnanimityLabel.UNANIMITY
    assert label_unanimity("por maioria", DEFAULT_UNANIMITY_RULES) is UnanimityLabel.NOT_UNANIMITY
    assert label_unanimity("Decisão não unânime", DEFAULT_UNANIMITY_RULES) is UnanimityLabel.NOT_UNANIMITY


def test_unanimity_absent_text():
    assert label_unanimity(None, DEFAULT_UNANIMITY_RULES) is None
    assert label_unanimity("   ", DEFAULT_UNANIMITY_RULES) is None
    assert label_unanimity("sem informação", DEFAULT_UNANIMITY_RULES) is None


def test_labeling_is_deterministic():
    for text, _ in TABLE_ROWS:
        first = label_decision(text, DEFAULT_DECISION_RULES)
        assert all(label_decision(text, DEFAULT_DECISION_RULES) is first for _ in range(5))


def test_adding_lower_priority_rule_never_changes_matched_labels():
    extended = DEFAULT_DECISION_RULES + (LabelRule("recurso", DecisionLabel.ADMINISTRATIVE, 999),)
    for text, expected in TABLE_ROWS:
        assert label_decision(text, extended) is expected


def test_duplicate_priorities_rejected():
    rules = (
        LabelRule("provid", DecisionLabel.YES, 1),
        LabelRule("negado", DecisionLabel.NO, 1),
    )
    with pytest.raises(ValueError, match="unique"):
        label_decision("provido", rules)


def test_empty_decision_rule_set_rejected():
    with pytest.raises(ValueError, match="nonempty"):
        label_decision("provido", ())


def test_bad_pattern_rejected():
    with pytest.raises(ValueError, match="does not compile"):
        LabelRule("provid(", DecisionLabel.YES, 1)


def _corpus(records) -> Corpus:
    return Corpus(records=tuple(records), census=Census(loaded=len(records), after_dedup=len(records)))


def test_build_labeled_dataset_all_match():
    records = [make_record(i, f"caso {i}") for i in range(6)]
    cases, report = build_labeled_dataset(_corpus(records))
    assert len(cases) == 6
    assert report.unlabeled_decision == 0
    assert report.unlabeled_unanimity == 0
    assert all(case.decision is DecisionLabel.YES for case in cases)
    assert all(case.unanimity is UnanimityLabel.UNANIMITY for case in cases)


def test_build_labeled_dataset_counts_exclusions_separately():
    records = [make_record(i, f"caso {i}") for i in range(7)]
    records += [make_record(10 + i, f"ruído {i}", decision_text="zzz qqq") for i in range(3)]
    records += [make_record(20, "sem unanimidade", unanimity_text=None)]
    cases, report = build_labeled_dataset(_corpus(records))
    assert len(cases) == 8
    assert report.unlabeled_decision == 3
    assert report.unlabeled_unanimity == 1
    missing = [case for case in cases if case.unanimity is None]
    assert len(missing) == 1 and missing[0].record.id == "20"


def test_unanimity_census_arithmetic():
    """Rebuild the published unanimity-task funnel: 4,332 -> 2,289 -> 2,274."""
    records = []
    i = 0
    # 2,274 predictive records with unanimity text.
    for count, decision_text in ((2229, "Recurso conhecido e provido"),):
        for _ in range(count):
            records.append(make_record(i, f"caso {i}", decision_text=decision_text)); i += 1
    for _ in range(45):
        records.append(make_record(i, f"caso {i}", unanimity_text="Por maioria")); i += 1
    # 15 non-predictive records that still carry unanimity text.
    for _ in range(15):
        records.append(make_record(i, f"caso {i}", decision_text="Recurso prejudicado")); i += 1
    # 2,000 predictive records without unanimity information.
    for _ in range(2000):
        records.append(make_record(i, f"caso {i}", unanimity_text=None)); i += 1
    # 43 records whose decision text no rule can label.
    for _ in range(43):
        records.append(make_record(i, f"caso {i}", decision_text="xyzzy")); i += 1
    assert len(records) == 4332

    cases, report = build_labeled_dataset(_corpus(records))
    assert report.unlabeled_decision == 43
    with_unanimity = [case for case in cases if case.unanimity is not None]
    assert len(with_unanimity) == 2289
    predictive = [case for case in with_unanimity if case.decision in
                  (DecisionLabel.YES, DecisionLabel.PARTIAL, DecisionLabel.NO)]
    assert len(predictive) == 2274
    labels = [case.unanimity for case in predictive]
    assert labels.count(UnanimityLabel.UNANIMITY) == 2229
    assert labels.count(UnanimityLabel.NOT_UNANIMITY) == 45


def test_rule_file_round_trip(tmp_path):
    path = tmp_path / "rules.tsv"
    path.write_text(
        "# custom rules\n"
        "10\tnot-cognized\tnão conhec|nao conhec\n"
        "20\tno\tnão provid|improvid\n"
        "30\tyes\tprovid\n"
        "10\tnot-unanimity\tpor maioria\n"
        "20\tunanimity\tunanim\n",
        encoding="utf-8",
    )
    decision_rules, unanimity_rules = load_rules(path)
    assert [rule.label for rule in decision_rules] == [
        DecisionLabel.NOT_COGNIZED, DecisionLabel.NO, DecisionLabel.YES
    ]
    assert label_decision("recurso provido", decision_rules) is DecisionLabel.YES
    assert label_unanimity("por maioria", unanimity_rules) is UnanimityLabel.NOT_UNANIMITY


def test_rule_file_errors(tmp_path):
    path = tmp_path / "rules.tsv"
    path.write_text("10\tbogus-label\tprovid\n", encoding="utf-8")
    with pytest.raises(ValueError, match="unknown label"):
        load_rules(path)
    path.write_text("x\tyes\tprovid\n", encoding="utf-8")
    with pytest.raises(ValueError, match="priority is not an integer"):
        load_rules(path)


def test_ruleset_hash_is_stable_and_sensitive():
    base = ruleset_hash(DEFAULT_DECISION_RULES, DEFAULT_UNANIMITY_RULES)
    assert base == ruleset_hash(DEFAULT_DECISION_RULES, DEFAULT_UNANIMITY_RULES)
    changed = DEFAULT_DECISION_RULES + (LabelRule("extra", DecisionLabel.YES, 99),)
    assert ruleset_hash(changed, DEFAULT_UNANIMITY_RULES) != base
