"""Automated scoring of Arabic free-text exam answers.

The pipeline: character cleanup and tokenization (textnorm), light or
heavy affix stripping (stemming), edit-distance similarity (similarity),
per-word credit and final classification (scoring), plus an embedded
exam store, an HTTP service and a batch CLI on top.
"""

from .scoring import (
    Classification,
    EmptyModelAnswerError,
    GradeResult,
    GradingPolicy,
    MatchTier,
    WordMatch,
    classify,
    grade,
    match_words,
    word_weight,
)
from .similarity import edit_distance, similarity
from .stemming import (
    ConfigError,
    Stem,
    StemMode,
    StemmerConfig,
    stem_answer,
    stem_stages,
)
from .store import Exam, ExamStore, Question, ReviewDecision, Submission
from .textnorm import Token

__version__ = "0.1.0"

__all__ = [
    "Classification",
    "ConfigError",
    "EmptyModelAnswerError",
    "Exam",
    "ExamStore",
    "GradeResult",
    "GradingPolicy",
    "MatchTier",
    "Question",
    "ReviewDecision",
    "Stem",
    "StemMode",
    "StemmerConfig",
    "Submission",
    "Token",
    "WordMatch",
    "classify",
    "edit_distance",
    "grade",
    "match_words",
    "similarity",
    "stem_answer",
    "stem_stages",
    "word_weight",
    "__version__",
]
