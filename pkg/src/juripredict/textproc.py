"""Portuguese text preprocessing: tokenization, stop words, suffix stripping.

Tokens are maximal runs of cased Unicode letters; digits, punctuation and
uncased symbols (e.g. ordinal indicators) act as separators. Stop words are
removed before stemming because stop lists are written as surface forms, and
the suffix table is written accented, so accents are stripped only after
stemming.
"""

from __future__ import annotations

import unicodedata
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Iterable, Sequence

TokenSequence = list[str]

DEFAULT_STOPWORDS_RESOURCE = "stopwords_pt.txt"
DEFAULT_STEM_RULES_RESOURCE = "stem_rules_pt.tsv"


@lru_cache(maxsize=8192)
def _is_letter(ch: str) -> bool:
    return unicodedata.category(ch) in ("Lu", "Ll")


def strip_accents(text: str) -> str:
    """Drop combining marks: 'decisão' -> 'decisao', 'cível' -> 'civel'."""
    decomposed = unicodedata.normalize("NFKD", text)
    return "".join(ch for ch in decomposed if not unicodedata.combining(ch))


@dataclass(frozen=True)
class PreprocessConfig:
    """Normalization settings shared by training and prediction.

    stem_rules are (suffix, min_stem_length) pairs; the table is kept sorted
    by descending suffix length so the longest applicable suffix wins.
    """

    stopwords: frozenset[str] = frozenset()
    stem_rules: tuple[tuple[str, int], ...] = ()
    strip_accents: bool = True
    min_token_length: int = 2

    def __post_init__(self) -> None:
        if self.min_token_length < 1:
            raise ValueError("min_token_length must be >= 1")
        ordered = tuple(sorted(self.stem_rules, key=lambda rule: -len(rule[0])))
        object.__setattr__(self, "stem_rules", ordered)
        for suffix, min_stem in self.stem_rules:
            if not suffix:
                raise ValueError("stem-rule suffix must be nonempty")
            if min_stem < 0:
                raise ValueError(f"min_stem_length for {suffix!r} must be >= 0")


def tokenize(text: str) -> TokenSequence:
    """Split lowercased text into maximal runs of cased Unicode letters."""
    tokens: list[str] = []
    current: list[str] = []
    for ch in text.lower():
        if _is_letter(ch):
            current.append(ch)
        elif current:
            tokens.append("".join(current))
            current = []
    if current:
        tokens.append("".join(current))
    return tokens


def remove_stopwords(tokens: Sequence[str], config: PreprocessConfig) -> TokenSequence:
    return [token for token in tokens if token not in config.stopwords]


def stem(token: str, config: PreprocessConfig) -> str:
    """Strip the longest configured suffix whose minimum-stem constraint holds.

    At most one rule applies; tokens shorter than every applicable constraint
    pass through unchanged.
    """
    for suffix, min_stem in config.stem_rules:
        if token.endswith(suffix) and len(token) - len(suffix) >= min_stem:
            return token[: -len(suffix)]
    return token


def _fold_token(token: str) -> str:
    # NFKD can resurface uppercase or non-letter compatibility forms
    # (ligatures, math alphabets); re-lowercase and keep letters only.
    return "".join(ch for ch in strip_accents(token).lower() if _is_letter(ch))


def preprocess(text: str, config: PreprocessConfig) -> TokenSequence:
    """tokenize -> remove stop words -> stem -> strip accents -> length filter."""
    tokens = remove_stopwords(tokenize(text), config)
    tokens = [stem(token, config) for token in tokens]
    if config.strip_accents:
        tokens = [_fold_token(token) for token in tokens]
    return [token for token in tokens if len(token) >= config.min_token_length]


def load_stopwords(path: str | Path) -> frozenset[str]:
    """Read a stop-word list: one word per line, UTF-8, '#' comments allowed."""
    return _parse_stopwords(Path(path).read_text(encoding="utf-8"))


def load_stem_rules(path: str | Path) -> tuple[tuple[str, int], ...]:
    """Read stem rules: one "suffix<TAB>min_stem_length" per line, UTF-8."""
    return _parse_stem_rules(Path(path).read_text(encoding="utf-8"), str(path))


def _parse_stopwords(text: str) -> frozenset[str]:
    words = set()
    for raw in text.splitlines():
        word = raw.strip()
        if word and not word.startswith("#"):
            words.add(word.lower())
    return frozenset(words)


def _parse_stem_rules(text: str, origin: str) -> tuple[tuple[str, int], ...]:
    rules: list[tuple[str, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 2:
            raise ValueError(f"{origin}:{lineno}: expected 'suffix<TAB>min_stem_length'")
        try:
            min_stem = int(parts[1])
        except ValueError as exc:
            raise ValueError(f"{origin}:{lineno}: min_stem_length is not an integer") from exc
        rules.append((parts[0], min_stem))
    return tuple(rules)


def _read_resource(name: str) -> str:
    return (resources.files(__package__) / "data" / name).read_text(encoding="utf-8")


@lru_cache(maxsize=1)
def default_stopwords() -> frozenset[str]:
    return _parse_stopwords(_read_resource(DEFAULT_STOPWORDS_RESOURCE))


@lru_cache(maxsize=1)
def default_stem_rules() -> tuple[tuple[str, int], ...]:
    return _parse_stem_rules(_read_resource(DEFAULT_STEM_RULES_RESOURCE), DEFAULT_STEM_RULES_RESOURCE)


def default_config() -> PreprocessConfig:
    """Shipped Portuguese defaults: ~200 function words, light suffix table."""
    return PreprocessConfig(stopwords=default_stopwords(), stem_rules=default_stem_rules())


def config_from_files(
    stopwords_path: str | Path | None = None,
    stem_rules_path: str | Path | None = None,
    strip_accents: bool = True,
    min_token_length: int = 2,
) -> PreprocessConfig:
    """Build a config from override files, falling back to shipped defaults."""
    stopwords = load_stopwords(stopwords_path) if stopwords_path else default_stopwords()
    stem_rules = load_stem_rules(stem_rules_path) if stem_rules_path else default_stem_rules()
    return PreprocessConfig(
        stopwords=stopwords,
        stem_rules=stem_rules,
        strip_accents=strip_accents,
        min_token_length=min_token_length,
    )
