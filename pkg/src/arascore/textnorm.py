"""Character-level cleanup and tokenization for Arabic answer text.

Character classes are defined by explicit code-point ranges so the
behaviour is exact and testable:

* numbers: ASCII digits U+0030-U+0039, Arabic-Indic U+0660-U+0669 and
  Extended Arabic-Indic U+06F0-U+06F9
* diacritics (tashkeel): U+064B-U+0652 plus the superscript alef U+0670
* foreign letters: any Unicode letter outside the Arabic script blocks
* letter normalization: hamzated alefs to bare alef, ta marbuta to ha

Every function here is pure and total; they feed the stemming pipelines.
"""

from __future__ import annotations

import unicodedata
from dataclasses import dataclass
from typing import Iterable, Sequence

_ASCII_DIGITS = {chr(c) for c in range(0x0030, 0x003A)}
_ARABIC_INDIC_DIGITS = {chr(c) for c in range(0x0660, 0x066A)}
_EXTENDED_ARABIC_INDIC_DIGITS = {chr(c) for c in range(0x06F0, 0x06FA)}
DIGITS = frozenset(_ASCII_DIGITS | _ARABIC_INDIC_DIGITS | _EXTENDED_ARABIC_INDIC_DIGITS)

# fathatan..sukun plus superscript alef
DIACRITICS = frozenset({chr(c) for c in range(0x064B, 0x0653)} | {"ٰ"})

# Blocks whose letters count as Arabic; a letter outside them is foreign.
_ARABIC_BLOCKS = (
    (0x0600, 0x06FF),
    (0x0750, 0x077F),  # Arabic Supplement
    (0x08A0, 0x08FF),  # Arabic Extended-A
    (0xFB50, 0xFDFF),  # Presentation Forms-A
    (0xFE70, 0xFEFF),  # Presentation Forms-B
)

TATWEEL = "ـ"

# alef variants to bare alef, ta marbuta to ha
LETTER_MAP = {
    "أ": "ا",  # أ
    "إ": "ا",  # إ
    "آ": "ا",  # آ
    "ة": "ه",  # ة
}


@dataclass(frozen=True)
class Token:
    """One whitespace-delimited word plus its position in the source answer."""

    content: str
    origin_index: int

    def with_content(self, content: str) -> "Token":
        return Token(content, self.origin_index)


def _in_arabic_block(ch: str) -> bool:
    code = ord(ch)
    return any(lo <= code <= hi for lo, hi in _ARABIC_BLOCKS)


def strip_numbers(text: str) -> str:
    """Remove ASCII, Arabic-Indic and Extended Arabic-Indic digits."""
    return "".join(ch for ch in text if ch not in DIGITS)


def strip_diacritics(text: str) -> str:
    """Remove tashkeel marks (U+064B-U+0652) and the superscript alef."""
    return "".join(ch for ch in text if ch not in DIACRITICS)


def strip_foreign_letters(text: str) -> str:
    """Remove letters of any non-Arabic script; keep everything else."""
    return "".join(
        ch
        for ch in text
        if not (unicodedata.category(ch).startswith("L") and not _in_arabic_block(ch))
    )


def normalize_letters(text: str) -> str:
    """Replace hamzated alef variants with bare alef and ta marbuta with ha."""
    return "".join(LETTER_MAP.get(ch, ch) for ch in text)


def normalize_token(token: Token) -> Token:
    return token.with_content(normalize_letters(token.content))


def _is_boundary_punctuation(ch: str) -> bool:
    # tatweel is category Lm but is treated as strippable punctuation
    return unicodedata.category(ch).startswith("P") or ch == TATWEEL


def tokenize(text: str) -> list[Token]:
    """Split on whitespace runs, trim boundary punctuation, drop empties."""
    tokens: list[Token] = []
    for fragment in text.split():
        start = 0
        end = len(fragment)
        while start < end and _is_boundary_punctuation(fragment[start]):
            start += 1
        while end > start and _is_boundary_punctuation(fragment[end - 1]):
            end -= 1
        word = fragment[start:end]
        if word:
            tokens.append(Token(word, len(tokens)))
    return tokens


def remove_stop_words(tokens: Iterable[Token], stop_words: Iterable[str]) -> list[Token]:
    """Drop tokens whose normalized content is a stop word.

    Membership is tested after letter normalization so that e.g. a
    hamzated spelling still matches its normalized stop-list entry.
    """
    stop_set = {normalize_letters(w) for w in stop_words}
    return [tok for tok in tokens if normalize_letters(tok.content) not in stop_set]


def strip_al_prefix(token: Token, al_prefixes: Sequence[str]) -> Token:
    """Remove one definite-article form (or derivative) from the word start.

    ``al_prefixes`` must be ordered longest-first; the longest matching
    entry is removed once, and only if at least two characters remain.
    """
    content = token.content
    for prefix in al_prefixes:
        if content.startswith(prefix):
            remainder = content[len(prefix):]
            if len(remainder) >= 2:
                return token.with_content(remainder)
            return token
    return token
