"""Embedded exam store: exams, submissions and review decisions on disk.

One UTF-8 JSON-lines file per collection, living in a single directory.
Every line is a self-describing document with a ``schema_version`` field,
so external tools can read the files directly (see docs/storage.md).
Writes are append-only and serialized by a per-store lock: updated exams
and regraded submissions append a new version of the record, and readers
take the last version per id. Raw answer text is stored verbatim; no
normalization happens at rest, so every grade can be re-derived later.
"""

from __future__ import annotations

import json
import threading
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path

from .scoring import EmptyModelAnswerError, GradeResult, GradingPolicy
from .stemming import StemMode, StemmerConfig, stem_answer

SCHEMA_VERSION = 1

EXAMS_FILE = "exams.jsonl"
SUBMISSIONS_FILE = "submissions.jsonl"
REVIEWS_FILE = "reviews.jsonl"


class StoreError(Exception):
    """Base class for store failures; ``code`` is machine-readable."""

    code = "store_error"


class ExamNotFoundError(StoreError):
    code = "exam_not_found"


class SubmissionNotFoundError(StoreError):
    code = "submission_not_found"


class AlreadyReviewedError(StoreError):
    code = "already_reviewed"


class InvalidExamError(StoreError):
    code = "invalid_exam"


def utcnow() -> datetime:
    return datetime.now(timezone.utc)


def _iso(ts: datetime) -> str:
    return ts.astimezone(timezone.utc).isoformat()


@dataclass(frozen=True)
class Question:
    question_id: str
    prompt: str
    model_answer: str
    max_points: float

    def to_doc(self) -> dict:
        return {
            "question_id": self.question_id,
            "prompt": self.prompt,
            "model_answer": self.model_answer,
            "max_points": self.max_points,
        }

    @classmethod
    def from_doc(cls, doc: dict) -> "Question":
        return cls(doc["question_id"], doc["prompt"], doc["model_answer"], doc["max_points"])


@dataclass(frozen=True)
class Exam:
    exam_id: str
    title: str
    mode: StemMode
    policy: GradingPolicy
    config: StemmerConfig
    questions: tuple[Question, ...]
    reveal_marks: bool = True

    def question(self, question_id: str) -> Question | None:
        for q in self.questions:
            if q.question_id == question_id:
                return q
        return None

    def next_question_id(self, question_id: str) -> str | None:
        ids = [q.question_id for q in self.questions]
        try:
            i = ids.index(question_id)
        except ValueError:
            return None
        return ids[i + 1] if i + 1 < len(ids) else None

    def validate(self) -> None:
        if not self.questions:
            raise InvalidExamError("an exam needs at least one question")
        ids = [q.question_id for q in self.questions]
        if len(set(ids)) != len(ids):
            raise InvalidExamError("duplicate question ids")
        for q in self.questions:
            if q.max_points <= 0:
                raise InvalidExamError(f"question {q.question_id}: max_points must be positive")
            if not stem_answer(q.model_answer, self.mode, self.config):
                raise EmptyModelAnswerError(
                    f"question {q.question_id}: model answer contains no gradable words"
                )

    def to_doc(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "kind": "exam",
            "exam_id": self.exam_id,
            "title": self.title,
            "mode": self.mode.value,
            "reveal_marks": self.reveal_marks,
            "policy": self.policy.to_doc(),
            "stemmer_config": self.config.to_doc(),
            "questions": [q.to_doc() for q in self.questions],
        }

    @classmethod
    def from_doc(cls, doc: dict) -> "Exam":
        return cls(
            exam_id=doc["exam_id"],
            title=doc["title"],
            mode=StemMode(doc["mode"]),
            policy=GradingPolicy.from_doc(doc["policy"]),
            config=StemmerConfig.from_doc(doc["stemmer_config"]),
            questions=tuple(Question.from_doc(q) for q in doc["questions"]),
            reveal_marks=doc.get("reveal_marks", True),
        )


@dataclass(frozen=True)
class ReviewDecision:
    reviewer_id: str
    final_points: float
    note: str
    decided_at: datetime = field(default_factory=utcnow)

    def to_doc(self) -> dict:
        return {
            "reviewer_id": self.reviewer_id,
            "final_points": self.final_points,
            "note": self.note,
            "decided_at": _iso(self.decided_at),
        }

    @classmethod
    def from_doc(cls, doc: dict) -> "ReviewDecision":
        return cls(
            reviewer_id=doc["reviewer_id"],
            final_points=doc["final_points"],
            note=doc["note"],
            decided_at=datetime.fromisoformat(doc["decided_at"]),
        )


@dataclass(frozen=True)
class Submission:
    submission_id: str
    exam_id: str
    question_id: str
    student_id: str
    answer_text: str
    grade: GradeResult
    submitted_at: datetime = field(default_factory=utcnow)
    grade_version: int = 1
    review: ReviewDecision | None = None

    def to_doc(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "kind": "submission",
            "submission_id": self.submission_id,
            "exam_id": self.exam_id,
            "question_id": self.question_id,
            "student_id": self.student_id,
            "answer_text": self.answer_text,
            "submitted_at": _iso(self.submitted_at),
            "grade_version": self.grade_version,
            "grade": self.grade.to_doc(),
        }

    @classmethod
    def from_doc(cls, doc: dict, review: ReviewDecision | None = None) -> "Submission":
        return cls(
            submission_id=doc["submission_id"],
            exam_id=doc["exam_id"],
            question_id=doc["question_id"],
            student_id=doc["student_id"],
            answer_text=doc["answer_text"],
            grade=GradeResult.from_doc(doc["grade"]),
            submitted_at=datetime.fromisoformat(doc["submitted_at"]),
            grade_version=doc.get("grade_version", 1),
            review=review,
        )


class ExamStore:
    """Single-writer, multi-reader store rooted at one directory."""

    def __init__(self, root: str | Path):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)
        self._write_lock = threading.Lock()

    # -- raw file access ---------------------------------------------------

    def _path(self, name: str) -> Path:
        return self.root / name

    def _append(self, name: str, doc: dict) -> None:
        line = json.dumps(doc, ensure_ascii=False)
        with self._write_lock:
            with open(self._path(name), "a", encoding="utf-8") as fh:
                fh.write(line + "\n")
                fh.flush()

    def _read_docs(self, name: str) -> list[dict]:
        path = self._path(name)
        if not path.exists():
            return []
        docs = []
        with open(path, encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if not line:
                    continue
                try:
                    docs.append(json.loads(line))
                except json.JSONDecodeError:
                    # a torn trailing line from an interrupted write; skip
                    continue
        return docs

    # -- exams ---------------------------------------------------------------

    def save_exam(self, exam: Exam) -> str:
        """Validate and persist an exam; re-saving an id appends a new version."""
        exam.validate()
        self._append(EXAMS_FILE, exam.to_doc())
        return exam.exam_id

    def load_exam(self, exam_id: str) -> Exam:
        doc = None
        for candidate in self._read_docs(EXAMS_FILE):
            if candidate["exam_id"] == exam_id:
                doc = candidate
        if doc is None:
            raise ExamNotFoundError(f"exam {exam_id} not found")
        return Exam.from_doc(doc)

    def list_exams(self) -> list[Exam]:
        latest: dict[str, dict] = {}
        for doc in self._read_docs(EXAMS_FILE):
            latest[doc["exam_id"]] = doc
        return [Exam.from_doc(d) for d in latest.values()]

    # -- submissions -----------------------------------------------------------

    def _latest_submission_docs(self) -> dict[str, dict]:
        latest: dict[str, dict] = {}
        for doc in self._read_docs(SUBMISSIONS_FILE):
            current = latest.get(doc["submission_id"])
            if current is None or doc.get("grade_version", 1) >= current.get("grade_version", 1):
                latest[doc["submission_id"]] = doc
        return latest

    def _reviews_by_submission(self) -> dict[str, ReviewDecision]:
        return {
            doc["submission_id"]: ReviewDecision.from_doc(doc)
            for doc in self._read_docs(REVIEWS_FILE)
        }

    def record_submission(self, submission: Submission) -> str:
        """Append a submission; retrying with the same id is a no-op."""
        if submission.submission_id in self._latest_submission_docs():
            return submission.submission_id
        self._append(SUBMISSIONS_FILE, submission.to_doc())
        return submission.submission_id

    def load_submission(self, submission_id: str) -> Submission:
        doc = self._latest_submission_docs().get(submission_id)
        if doc is None:
            raise SubmissionNotFoundError(f"submission {submission_id} not found")
        return Submission.from_doc(doc, self._reviews_by_submission().get(submission_id))

    def submissions_for_exam(self, exam_id: str) -> list[Submission]:
        reviews = self._reviews_by_submission()
        docs = [
            d for d in self._latest_submission_docs().values() if d["exam_id"] == exam_id
        ]
        docs.sort(key=lambda d: (d["submitted_at"], d["submission_id"]))
        return [Submission.from_doc(d, reviews.get(d["submission_id"])) for d in docs]

    def pending_reviews(self, exam_id: str | None = None) -> list[Submission]:
        """Submissions classified needs_review with no decision, oldest first."""
        reviews = self._reviews_by_submission()
        docs = [
            d
            for d in self._latest_submission_docs().values()
            if d["submission_id"] not in reviews
            and d["grade"]["classification"] == "needs_review"
            and (exam_id is None or d["exam_id"] == exam_id)
        ]
        docs.sort(key=lambda d: (d["submitted_at"], d["submission_id"]))
        return [Submission.from_doc(d) for d in docs]

    def record_review(self, submission_id: str, decision: ReviewDecision) -> None:
        submission = self.load_submission(submission_id)  # raises if unknown
        if submission.review is not None:
            raise AlreadyReviewedError(f"submission {submission_id} already reviewed")
        exam = self.load_exam(submission.exam_id)
        question = exam.question(submission.question_id)
        max_points = question.max_points if question else None
        if decision.final_points < 0 or (max_points is not None and decision.final_points > max_points):
            raise InvalidExamError(
                f"final_points must be within [0, {max_points}]"
            )
        doc = {"schema_version": SCHEMA_VERSION, "kind": "review", "submission_id": submission_id}
        doc.update(decision.to_doc())
        self._append(REVIEWS_FILE, doc)

    def update_grade(self, submission_id: str, new_grade: GradeResult) -> Submission:
        """Append a regraded version of an existing submission."""
        current = self.load_submission(submission_id)
        regraded = Submission(
            submission_id=current.submission_id,
            exam_id=current.exam_id,
            question_id=current.question_id,
            student_id=current.student_id,
            answer_text=current.answer_text,
            grade=new_grade,
            submitted_at=current.submitted_at,
            grade_version=current.grade_version + 1,
            review=current.review,
        )
        self._append(SUBMISSIONS_FILE, regraded.to_doc())
        return regraded

    def find_submission(
        self, exam_id: str, question_id: str, student_id: str
    ) -> Submission | None:
        """Latest submission by one student for one question, if any."""
        for doc in self._latest_submission_docs().values():
            if (
                doc["exam_id"] == exam_id
                and doc["question_id"] == question_id
                and doc["student_id"] == student_id
            ):
                return Submission.from_doc(doc, self._reviews_by_submission().get(doc["submission_id"]))
        return None
