"""Rule-based labeling of decision and unanimity texts.

Rules are ordered by priority (lower fires first) and matched case- and
accent-insensitively: court texts are inconsistently accented, so combining
marks are dropped from both the text and the pattern source before regex
search, and patterns compile with IGNORECASE.

The default rule sets cover the standard dispositive phrasings of Brazilian
appellate decisions, ordered specificity-first to stop substring shadowing
("provido" inside "não provido"). They are a best-effort reconstruction of
one court's phrasing inventory; other courts can load their own rule file.
"""

from __future__ import annotations

import hashlib
import re
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Iterable, Sequence

from .corpus import Corpus, RawDecision
from .textproc import strip_accents


class DecisionLabel(Enum):
    YES = "yes"
    PARTIAL = "partial"
    NO = "no"
    NOT_COGNIZED = "not-cognized"
    PREJUDICADA = "prejudicada"
    ADMINISTRATIVE = "administrative"


class UnanimityLabel(Enum):
    UNANIMITY = "unanimity"
    NOT_UNANIMITY = "not-unanimity"


PREDICTIVE_LABELS = frozenset({DecisionLabel.YES, DecisionLabel.PARTIAL, DecisionLabel.NO})

_DECISION_VALUES = {label.value: label for label in DecisionLabel}
_UNANIMITY_VALUES = {label.value: label for label in UnanimityLabel}


def fold(text: str) -> str:
    """Case- and accent-fold text before rule matching."""
    return strip_accents(text.lower())


@dataclass(frozen=True)
class LabelRule:
    """One pattern in an ordered rule set; lower priority fires first."""

    pattern: str
    label: DecisionLabel | UnanimityLabel
    priority: int
    _compiled: re.Pattern = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        # Accent-strip the pattern source (case handled by IGNORECASE, not by
        # lowercasing, which would corrupt escapes like \W).
        try:
            compiled = re.compile(strip_accents(self.pattern), re.IGNORECASE)
        except re.error as exc:
            raise ValueError(f"rule pattern {self.pattern!r} does not compile: {exc}") from exc
        object.__setattr__(self, "_compiled", compiled)

    def matches(self, folded_text: str) -> bool:
        return self._compiled.search(folded_text) is not None


DEFAULT_DECISION_RULES: tuple[LabelRule, ...] = (
    LabelRule("não conhec|nao conhec", DecisionLabel.NOT_COGNIZED, 10),
    LabelRule("prejudicad", DecisionLabel.PREJUDICADA, 20),
    LabelRule("conflito de competência|administrativ", DecisionLabel.ADMINISTRATIVE, 30),
    LabelRule("parcialmente provid|parcial provimento", DecisionLabel.PARTIAL, 40),
    LabelRule(
        "não provid|nao provid|improvid|negou provimento|negado provimento",
        DecisionLabel.NO,
        50,
    ),
    LabelRule("provid|deu provimento|dar provimento", DecisionLabel.YES, 60),
)

DEFAULT_UNANIMITY_RULES: tuple[LabelRule, ...] = (
    LabelRule(r"(não|nao)\s+un[aâ]nim|por maioria|maioria de votos", UnanimityLabel.NOT_UNANIMITY, 10),
    LabelRule("unanim|unânime", UnanimityLabel.UNANIMITY, 20),
)


def _sorted_rules(rules: Sequence[LabelRule]) -> list[LabelRule]:
    ordered = sorted(rules, key=lambda rule: rule.priority)
    priorities = [rule.priority for rule in ordered]
    if len(set(priorities)) != len(priorities):
        raise ValueError("rule priorities must be unique within a rule set")
    return ordered


def label_decision(decision_text: str, rules: Sequence[LabelRule]) -> DecisionLabel | None:
    """First matching rule wins; no match is a valid (absent) outcome."""
    if not rules:
        raise ValueError("decision rule set must be nonempty")
    folded = fold(decision_text)
    for rule in _sorted_rules(rules):
        if rule.matches(folded):
            assert isinstance(rule.label, DecisionLabel)
            return rule.label
    return None


def label_unanimity(
    unanimity_text: str | None, rules: Sequence[LabelRule]
) -> UnanimityLabel | None:
    if unanimity_text is None or not unanimity_text.strip():
        return None
    folded = fold(unanimity_text)
    for rule in _sorted_rules(rules):
        if rule.matches(folded):
            assert isinstance(rule.label, UnanimityLabel)
            return rule.label
    return None


@dataclass(frozen=True)
class LabeledCase:
    """A record whose decision label resolved; unanimity may be absent."""

    record: RawDecision
    decision: DecisionLabel
    unanimity: UnanimityLabel | None


@dataclass
class ExclusionReport:
    """Counts of records the rule sets could not label."""

    unlabeled_decision: int = 0
    unlabeled_unanimity: int = 0


def build_labeled_dataset(
    corpus: Corpus,
    decision_rules: Sequence[LabelRule] = DEFAULT_DECISION_RULES,
    unanimity_rules: Sequence[LabelRule] = DEFAULT_UNANIMITY_RULES,
) -> tuple[list[LabeledCase], ExclusionReport]:
    """Label every record; drop those without a decision label.

    Records lacking a unanimity label stay in the output (the decision task
    still uses them) and are counted separately so the unanimity-task census
    is reconstructible.
    """
    cases: list[LabeledCase] = []
    report = ExclusionReport()
    for record in corpus.records:
        decision = label_decision(record.decision_text, decision_rules)
        if decision is None:
            report.unlabeled_decision += 1
            continue
        unanimity = label_unanimity(record.unanimity_text, unanimity_rules)
        if unanimity is None:
            report.unlabeled_unanimity += 1
        cases.append(LabeledCase(record=record, decision=decision, unanimity=unanimity))
    return cases, report


def load_rules(path: str | Path) -> tuple[tuple[LabelRule, ...], tuple[LabelRule, ...]]:
    """Read one rule file holding both rule families.

    Format: one "priority<TAB>label<TAB>pattern" per line, UTF-8; blank lines
    and '#' comments ignored. The label value decides whether a rule belongs
    to the decision or the unanimity set.
    """
    decision_rules: list[LabelRule] = []
    unanimity_rules: list[LabelRule] = []
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 3:
            raise ValueError(f"{path}:{lineno}: expected 'priority<TAB>label<TAB>pattern'")
        priority_text, label_text, pattern = parts
        try:
            priority = int(priority_text)
        except ValueError as exc:
            raise ValueError(f"{path}:{lineno}: priority is not an integer") from exc
        if label_text in _DECISION_VALUES:
            decision_rules.append(LabelRule(pattern, _DECISION_VALUES[label_text], priority))
        elif label_text in _UNANIMITY_VALUES:
            unanimity_rules.append(LabelRule(pattern, _UNANIMITY_VALUES[label_text], priority))
        else:
            raise ValueError(f"{path}:{lineno}: unknown label {label_text!r}")
    return (
        tuple(_sorted_rules(decision_rules)) if decision_rules else DEFAULT_DECISION_RULES,
        tuple(_sorted_rules(unanimity_rules)) if unanimity_rules else DEFAULT_UNANIMITY_RULES,
    )


def ruleset_hash(*rule_sets: Sequence[LabelRule]) -> str:
    """Stable digest of the active rules, recorded in model files."""
    lines = []
    for rules in rule_sets:
        for rule in _sorted_rules(rules):
            lines.append(f"{rule.priority}\t{rule.label.value}\t{rule.pattern}")
    digest = hashlib.sha256("\n".join(lines).encode("utf-8")).hexdigest()
    return digest
