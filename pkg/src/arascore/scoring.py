"""Per-word credit accumulation and final-mark classification.

Every stem of the model answer carries the same weight, 1/n. Student
stems are paired to model stems greedily, highest similarity first, one
to one. A paired word earns the full weight when its similarity reaches
``full_credit_threshold``, half credit above ``partial_credit_threshold``
and nothing below that; model stems left unpaired earn nothing and extra
student words are dropped. The accumulated mark in [0, 1] is then banded
into full mark / correct / needs-review / wrong.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .similarity import similarity
from .stemming import ConfigError, Stem, StemMode, StemmerConfig, stem_answer
from .textnorm import Token

# tolerance for all floating comparisons against thresholds
EPSILON = 1e-9


class MatchTier(str, Enum):
    EXACT = "exact"
    NEAR_EXACT = "near_exact"
    PARTIAL = "partial"
    NONE = "none"
    UNMATCHED = "unmatched"


class Classification(str, Enum):
    FULL_MARK = "full_mark"
    CORRECT = "correct"
    NEEDS_REVIEW = "needs_review"
    WRONG = "wrong"


class EmptyModelAnswerError(ValueError):
    """The model answer produced no stems; the exam content is broken."""


@dataclass(frozen=True)
class GradingPolicy:
    """Instructor-editable thresholds for per-word credit and final bands."""

    full_credit_threshold: float = 0.96
    partial_credit_threshold: float = 0.80
    partial_credit_factor: float = 0.5
    class_full: float = 1.0
    class_correct: float = 0.96
    class_review: float = 0.75

    def __post_init__(self):
        if not 0 < self.partial_credit_threshold < self.full_credit_threshold <= 1:
            raise ConfigError("need 0 < partial_credit_threshold < full_credit_threshold <= 1")
        if not 0 <= self.partial_credit_factor <= 1:
            raise ConfigError("partial_credit_factor must be in [0, 1]")
        if not 0 < self.class_review < self.class_correct <= self.class_full <= 1:
            raise ConfigError("need 0 < class_review < class_correct <= class_full <= 1")

    def to_doc(self) -> dict:
        return {
            "full_credit_threshold": self.full_credit_threshold,
            "partial_credit_threshold": self.partial_credit_threshold,
            "partial_credit_factor": self.partial_credit_factor,
            "class_full": self.class_full,
            "class_correct": self.class_correct,
            "class_review": self.class_review,
        }

    @classmethod
    def from_doc(cls, doc: dict) -> "GradingPolicy":
        unknown = set(doc) - set(cls.__dataclass_fields__)
        if unknown:
            raise ConfigError(f"unknown policy fields: {sorted(unknown)}")
        for key, value in doc.items():
            if not isinstance(value, (int, float)) or isinstance(value, bool):
                raise ConfigError(f"policy field {key} must be a number")
        return cls(**{k: float(v) for k, v in doc.items()})


@dataclass(frozen=True)
class WordMatch:
    """How one model-answer stem fared against the student answer."""

    correct_stem: Stem
    student_stem: Stem | None
    similarity: float
    tier: MatchTier
    credit: float

    def to_doc(self) -> dict:
        return {
            "correct_stem": self.correct_stem.content,
            "correct_word": self.correct_stem.source.content,
            "correct_index": self.correct_stem.source.origin_index,
            "student_stem": self.student_stem.content if self.student_stem else None,
            "student_word": self.student_stem.source.content if self.student_stem else None,
            "student_index": self.student_stem.source.origin_index if self.student_stem else None,
            "similarity": self.similarity,
            "tier": self.tier.value,
            "credit": self.credit,
        }

    @classmethod
    def from_doc(cls, doc: dict) -> "WordMatch":
        correct = Stem(doc["correct_stem"], Token(doc["correct_word"], doc["correct_index"]))
        student = None
        if doc.get("student_stem") is not None:
            student = Stem(doc["student_stem"], Token(doc["student_word"], doc["student_index"]))
        return cls(correct, student, doc["similarity"], MatchTier(doc["tier"]), doc["credit"])


@dataclass(frozen=True)
class GradeResult:
    """Complete audit trail for one graded answer."""

    mark_sum: float
    word_weight: float
    matches: tuple[WordMatch, ...]
    classification: Classification
    mode: StemMode

    def to_doc(self) -> dict:
        return {
            "mark_sum": self.mark_sum,
            "word_weight": self.word_weight,
            "classification": self.classification.value,
            "mode": self.mode.value,
            "matches": [m.to_doc() for m in self.matches],
        }

    @classmethod
    def from_doc(cls, doc: dict) -> "GradeResult":
        return cls(
            mark_sum=doc["mark_sum"],
            word_weight=doc["word_weight"],
            matches=tuple(WordMatch.from_doc(m) for m in doc["matches"]),
            classification=Classification(doc["classification"]),
            mode=StemMode(doc["mode"]),
        )


def word_weight(n_correct_stems: int) -> float:
    """Weight of each model-answer word: 1 / number of model stems."""
    if n_correct_stems < 1:
        raise EmptyModelAnswerError("model answer contains no gradable words")
    return 1.0 / n_correct_stems


def credit_tier(sim: float, policy: GradingPolicy) -> MatchTier:
    """Tier of a paired word as a function of its similarity alone."""
    if sim >= 1.0 - EPSILON:
        return MatchTier.EXACT
    if sim >= policy.full_credit_threshold - EPSILON:
        return MatchTier.NEAR_EXACT
    if sim >= policy.partial_credit_threshold - EPSILON:
        return MatchTier.PARTIAL
    return MatchTier.NONE


def tier_credit(tier: MatchTier, weight: float, policy: GradingPolicy) -> float:
    if tier in (MatchTier.EXACT, MatchTier.NEAR_EXACT):
        return weight
    if tier is MatchTier.PARTIAL:
        return weight * policy.partial_credit_factor
    return 0.0


def match_words(
    student: list[Stem], correct: list[Stem], policy: GradingPolicy | None = None
) -> list[WordMatch]:
    """Pair student stems to model stems, one match record per model stem.

    Pairs are bound greedily by descending similarity (ties: smaller model
    word position, then smaller student word position). Pairs below the
    partial-credit threshold are never bound: they would earn nothing, and
    binding them would only obscure the audit trail. Model stems left
    unbound are reported as unmatched; surplus student stems are dropped.
    """
    if policy is None:
        policy = GradingPolicy()
    if not correct:
        return []
    weight = word_weight(len(correct))

    pairs = [
        (similarity(s.content, c.content), ci, si)
        for ci, c in enumerate(correct)
        for si, s in enumerate(student)
    ]
    pairs.sort(
        key=lambda p: (-p[0], correct[p[1]].source.origin_index, student[p[2]].source.origin_index)
    )

    bound: dict[int, tuple[int, float]] = {}
    used_students: set[int] = set()
    for sim, ci, si in pairs:
        if sim < policy.partial_credit_threshold - EPSILON:
            break
        if ci in bound or si in used_students:
            continue
        bound[ci] = (si, sim)
        used_students.add(si)

    matches = []
    for ci, c in enumerate(correct):
        if ci in bound:
            si, sim = bound[ci]
            tier = credit_tier(sim, policy)
            matches.append(WordMatch(c, student[si], sim, tier, tier_credit(tier, weight, policy)))
        else:
            matches.append(WordMatch(c, None, 0.0, MatchTier.UNMATCHED, 0.0))
    return matches


def classify(mark_sum: float, policy: GradingPolicy | None = None) -> Classification:
    """Band the accumulated mark into the four final outcomes."""
    if policy is None:
        policy = GradingPolicy()
    if mark_sum >= policy.class_full - EPSILON:
        return Classification.FULL_MARK
    if mark_sum >= policy.class_correct - EPSILON:
        return Classification.CORRECT
    if mark_sum >= policy.class_review - EPSILON:
        return Classification.NEEDS_REVIEW
    return Classification.WRONG


def grade(
    student_answer: str,
    model_answer: str,
    mode: StemMode | str,
    config: StemmerConfig | None = None,
    policy: GradingPolicy | None = None,
) -> GradeResult:
    """Stem both answers, pair words, accumulate credit and classify."""
    mode = StemMode(mode)
    if policy is None:
        policy = GradingPolicy()
    correct = stem_answer(model_answer, mode, config)
    if not correct:
        raise EmptyModelAnswerError("model answer contains no gradable words")
    student = stem_answer(student_answer, mode, config)
    matches = match_words(student, correct, policy)
    mark_sum = sum(m.credit for m in matches)
    return GradeResult(
        mark_sum=mark_sum,
        word_weight=word_weight(len(correct)),
        matches=tuple(matches),
        classification=classify(mark_sum, policy),
        mode=mode,
    )
