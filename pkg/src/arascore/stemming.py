"""Light and heavy Arabic affix stripping.

Both pipelines share the same skeleton: character cleanup, tokenization,
stop-word removal, definite-article removal and letter normalization.
Heavy mode then strips one prefix and one suffix from a larger affix
inventory; light mode strips a single suffix from a ten-entry list.
A word is only stripped while it is longer than ``min_strip_length``,
and a strip never leaves fewer than ``min_remainder`` characters.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Sequence

from .textnorm import (
    Token,
    normalize_letters,
    normalize_token,
    remove_stop_words,
    strip_al_prefix,
    strip_diacritics,
    strip_foreign_letters,
    strip_numbers,
    tokenize,
)


class StemMode(str, Enum):
    LIGHT = "light"
    HEAVY = "heavy"


DEFAULT_STOP_WORDS = ("في", "و", "ان", "اذا", "هو", "هي", "هما")

DEFAULT_AL_PREFIXES = ("بال", "لل", "ال", "فال", "لبال", "وبال", "فبال", "تال", "وال", "كال")

# single-letter particles; the definite article and its derivatives are
# handled separately by strip_al_prefix
DEFAULT_HEAVY_PREFIXES = ("و", "ف", "ب", "ك", "ل", "س")

DEFAULT_LIGHT_SUFFIXES = ("ها", "ان", "ات", "ون", "ين", "يه", "ية", "ه", "ي", "ة")

DEFAULT_HEAVY_SUFFIXES = DEFAULT_LIGHT_SUFFIXES + (
    "هما", "كما", "نا", "كم", "هم", "هن", "تم", "وا", "تا", "ت",
)


class ConfigError(ValueError):
    """Raised when a stemmer or policy document violates its invariants."""


def _longest_first(entries: Sequence[str]) -> tuple[str, ...]:
    return tuple(sorted(entries, key=lambda e: -len(e)))


@dataclass(frozen=True)
class StemmerConfig:
    """Word lists and length guards driving both stemming modes.

    All of this is data: an exam stores its own copy and instructors may
    edit it without touching code. Affix lists are kept longest-first so
    the first match is always the longest one.
    """

    stop_words: tuple[str, ...] = DEFAULT_STOP_WORDS
    al_prefixes: tuple[str, ...] = DEFAULT_AL_PREFIXES
    heavy_prefixes: tuple[str, ...] = DEFAULT_HEAVY_PREFIXES
    heavy_suffixes: tuple[str, ...] = DEFAULT_HEAVY_SUFFIXES
    light_suffixes: tuple[str, ...] = DEFAULT_LIGHT_SUFFIXES
    min_strip_length: int = 3
    min_remainder: int = 2
    strip_diacritics_in_light: bool = False

    def __post_init__(self):
        if self.min_strip_length < 1:
            raise ConfigError("min_strip_length must be >= 1")
        if self.min_remainder < 1:
            raise ConfigError("min_remainder must be >= 1")
        for name in ("stop_words", "al_prefixes", "heavy_prefixes", "heavy_suffixes", "light_suffixes"):
            entries = getattr(self, name)
            if any(not isinstance(e, str) or not e for e in entries):
                raise ConfigError(f"{name} entries must be non-empty strings")
        if (
            self.light_suffixes
            and self.heavy_suffixes
            and set(self.light_suffixes) == set(self.heavy_suffixes)
        ):
            raise ConfigError("light_suffixes must differ from heavy_suffixes")
        # normalize stop entries once so membership tests stay consistent
        object.__setattr__(self, "stop_words", tuple(normalize_letters(w) for w in self.stop_words))
        object.__setattr__(self, "al_prefixes", _longest_first(self.al_prefixes))
        object.__setattr__(self, "heavy_prefixes", _longest_first(self.heavy_prefixes))
        object.__setattr__(self, "heavy_suffixes", _longest_first(self.heavy_suffixes))
        object.__setattr__(self, "light_suffixes", _longest_first(self.light_suffixes))

    def to_doc(self) -> dict:
        return {
            "stop_words": list(self.stop_words),
            "al_prefixes": list(self.al_prefixes),
            "heavy_prefixes": list(self.heavy_prefixes),
            "heavy_suffixes": list(self.heavy_suffixes),
            "light_suffixes": list(self.light_suffixes),
            "min_strip_length": self.min_strip_length,
            "min_remainder": self.min_remainder,
            "strip_diacritics_in_light": self.strip_diacritics_in_light,
        }

    @classmethod
    def from_doc(cls, doc: dict) -> "StemmerConfig":
        known = {f for f in cls.__dataclass_fields__}
        unknown = set(doc) - known
        if unknown:
            raise ConfigError(f"unknown stemmer config fields: {sorted(unknown)}")
        kwargs = dict(doc)
        for name in ("stop_words", "al_prefixes", "heavy_prefixes", "heavy_suffixes", "light_suffixes"):
            if name in kwargs:
                kwargs[name] = tuple(kwargs[name])
        for name in ("min_strip_length", "min_remainder"):
            if name in kwargs and not isinstance(kwargs[name], int):
                raise ConfigError(f"{name} must be an integer")
        return cls(**kwargs)


@dataclass(frozen=True)
class Stem:
    """A fully stripped word plus the token it came from."""

    content: str
    source: Token


def strip_prefix(token: Token, prefixes: Sequence[str], config: StemmerConfig) -> Token:
    """Remove the longest matching prefix once, guarded by word length."""
    content = token.content
    if len(content) <= config.min_strip_length:
        return token
    for prefix in prefixes:
        if content.startswith(prefix):
            remainder = content[len(prefix):]
            if len(remainder) >= config.min_remainder:
                return token.with_content(remainder)
            return token
    return token


def strip_suffix(token: Token, suffixes: Sequence[str], config: StemmerConfig) -> Token:
    """Remove the longest matching suffix once, guarded by word length."""
    content = token.content
    if len(content) <= config.min_strip_length:
        return token
    for suffix in suffixes:
        if content.endswith(suffix):
            remainder = content[: len(content) - len(suffix)]
            if len(remainder) >= config.min_remainder:
                return token.with_content(remainder)
            return token
    return token


def clean_text(text: str, mode: StemMode, config: StemmerConfig) -> str:
    """Character-level cleanup appropriate to the mode."""
    text = strip_numbers(text)
    if mode is StemMode.HEAVY or config.strip_diacritics_in_light:
        text = strip_diacritics(text)
    return strip_foreign_letters(text)


def _strip_affixes(token: Token, mode: StemMode, config: StemmerConfig) -> Token:
    token = strip_al_prefix(token, config.al_prefixes)
    token = normalize_token(token)
    if mode is StemMode.HEAVY:
        token = strip_prefix(token, config.heavy_prefixes, config)
        token = strip_suffix(token, config.heavy_suffixes, config)
    else:
        token = strip_suffix(token, config.light_suffixes, config)
    return token


def stem_answer(text: str, mode: StemMode | str, config: StemmerConfig | None = None) -> list[Stem]:
    """Run the full pipeline on an answer, returning stems in word order."""
    mode = StemMode(mode)
    if config is None:
        config = StemmerConfig()
    tokens = tokenize(clean_text(text, mode, config))
    tokens = remove_stop_words(tokens, config.stop_words)
    return [Stem(_strip_affixes(tok, mode, config).content, tok) for tok in tokens]


def stem_stages(word: str, mode: StemMode | str, config: StemmerConfig | None = None) -> list[tuple[str, str]]:
    """Trace one word through the pipeline, stage by stage.

    Returns (stage, value) pairs; the value of the last pair is the final
    stem, or "" when the word is consumed entirely (stop word, all-digit
    input and the like).
    """
    mode = StemMode(mode)
    if config is None:
        config = StemmerConfig()
    stages = [("cleanup", clean_text(word, mode, config))]
    tokens = tokenize(stages[-1][1])
    if not tokens:
        stages.append(("tokenize", ""))
        return stages
    token = tokens[0]
    if not remove_stop_words([token], config.stop_words):
        stages.append(("stopword", ""))
        return stages
    token = strip_al_prefix(token, config.al_prefixes)
    stages.append(("al", token.content))
    token = normalize_token(token)
    stages.append(("normalize", token.content))
    if mode is StemMode.HEAVY:
        token = strip_prefix(token, config.heavy_prefixes, config)
        stages.append(("prefix", token.content))
        token = strip_suffix(token, config.heavy_suffixes, config)
        stages.append(("suffix", token.content))
    else:
        token = strip_suffix(token, config.light_suffixes, config)
        stages.append(("suffix", token.content))
    return stages
